/** Minimal hand-rolled SVG building blocks shared by the figure renderers. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGIN: Margin = { top: 40, right: 24, bottom: 48, left: 64 };

export const WIDTH = 720;
export const HEIGHT = 440;

export const PALETTE = [
  "#1f6feb",
  "#d1242f",
  "#1a7f37",
  "#9a6700",
  "#8250df",
  "#cf222e",
  "#0969da",
  "#57606a",
];

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    // degenerate domain: widen it so the single value lands mid-range
    d0 -= 1;
    d1 += 1;
  }
  const scale = ((value: number) =>
    range[0] + ((value - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  scale.domain = [d0, d1];
  scale.range = range;
  return scale;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error("log scale requires a positive domain");
  }
  const inner = linearScale([Math.log10(d0), Math.log10(d1)], range);
  const scale = ((value: number) => inner(Math.log10(value))) as Scale;
  scale.domain = [d0, d1];
  scale.range = range;
  return scale;
}

export function extent(values: number[]): [number, number] {
  return [Math.min(...values), Math.max(...values)];
}

export function padDomain([lo, hi]: [number, number], frac = 0.05): [number, number] {
  const pad = (hi - lo || Math.abs(lo) || 1) * frac;
  return [lo - pad, hi + pad];
}

export function ticks([lo, hi]: [number, number], count = 6): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((c) => span / c <= count) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + chosen * 1e-9; v += chosen) {
    out.push(Math.abs(v) < chosen * 1e-9 ? 0 : v);
  }
  return out;
}

export function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) return value.toExponential(1);
  return String(parseFloat(value.toPrecision(5)));
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === "" && tag !== "text"
    ? `<${tag} ${parts}/>`
    : `<${tag} ${parts}>${body}</${tag}>`;
}

export function text(
  x: number,
  y: number,
  body: string,
  attrs: Record<string, string | number> = {},
): string {
  return el(
    "text",
    { x: x.toFixed(1), y: y.toFixed(1), "font-size": 12, fill: "#24292f", ...attrs },
    esc(body),
  );
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  attrs: Record<string, string | number> = {},
): string {
  return el("line", {
    x1: x1.toFixed(1),
    y1: y1.toFixed(1),
    x2: x2.toFixed(1),
    y2: y2.toFixed(1),
    stroke: "#24292f",
    "stroke-width": 1,
    ...attrs,
  });
}

export function polyline(
  points: [number, number][],
  attrs: Record<string, string | number> = {},
): string {
  const pts = points.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
  return el("polyline", {
    points: pts,
    fill: "none",
    stroke: "#1f6feb",
    "stroke-width": 1.5,
    ...attrs,
  });
}

export function circle(
  cx: number,
  cy: number,
  r: number,
  attrs: Record<string, string | number> = {},
): string {
  return el("circle", { cx: cx.toFixed(1), cy: cy.toFixed(1), r, ...attrs });
}

export function rect(
  x: number,
  y: number,
  w: number,
  h: number,
  attrs: Record<string, string | number> = {},
): string {
  return el("rect", {
    x: x.toFixed(1),
    y: y.toFixed(1),
    width: Math.max(w, 0).toFixed(1),
    height: Math.max(h, 0).toFixed(1),
    ...attrs,
  });
}

export interface AxisOptions {
  xLabel: string;
  yLabel: string;
  xTicks?: number[];
  yTicks?: number[];
  xFmt?: (v: number) => string;
}

/** Axis lines, tick marks, tick labels, and axis labels for a plot area. */
export function axes(xScale: Scale, yScale: Scale, opts: AxisOptions): string {
  const [x0, x1] = xScale.range;
  const [yBottom, yTop] = yScale.range;
  const xTicks = opts.xTicks ?? ticks(xScale.domain);
  const yTicks = opts.yTicks ?? ticks(yScale.domain);
  const xFmt = opts.xFmt ?? fmt;
  const parts: string[] = [];
  parts.push(line(x0, yBottom, x1, yBottom));
  parts.push(line(x0, yBottom, x0, yTop));
  for (const t of xTicks) {
    const x = xScale(t);
    parts.push(line(x, yBottom, x, yBottom + 5));
    parts.push(text(x, yBottom + 18, xFmt(t), { "text-anchor": "middle" }));
  }
  for (const t of yTicks) {
    const y = yScale(t);
    parts.push(line(x0 - 5, y, x0, y));
    parts.push(line(x0, y, x1, y, { stroke: "#d0d7de", "stroke-width": 0.5 }));
    parts.push(text(x0 - 8, y + 4, fmt(t), { "text-anchor": "end" }));
  }
  parts.push(
    text((x0 + x1) / 2, yBottom + 38, opts.xLabel, { "text-anchor": "middle", "font-size": 13 }),
  );
  parts.push(
    text(16, (yBottom + yTop) / 2, opts.yLabel, {
      "text-anchor": "middle",
      "font-size": 13,
      transform: `rotate(-90 16 ${((yBottom + yTop) / 2).toFixed(1)})`,
    }),
  );
  return parts.join("\n");
}

export function legend(
  entries: { label: string; color: string; dashed?: boolean }[],
  x: number,
  y: number,
): string {
  return entries
    .map((entry, i) => {
      const yy = y + i * 18;
      const stroke: Record<string, string | number> = {
        stroke: entry.color,
        "stroke-width": 2,
      };
      if (entry.dashed) stroke["stroke-dasharray"] = "5 3";
      return line(x, yy, x + 24, yy, stroke) + text(x + 30, yy + 4, entry.label);
    })
    .join("\n");
}

export function svgDocument(title: string, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
    rect(0, 0, WIDTH, HEIGHT, { fill: "#ffffff" }),
    text(WIDTH / 2, 22, title, { "text-anchor": "middle", "font-size": 15, "font-weight": "bold" }),
    body,
    `</svg>`,
  ].join("\n");
}
