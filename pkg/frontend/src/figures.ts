import type { Kind, Row } from "./schemas.js";
import {
  DEFAULT_MARGIN,
  HEIGHT,
  PALETTE,
  WIDTH,
  axes,
  circle,
  extent,
  legend,
  line,
  linearScale,
  logScale,
  padDomain,
  polyline,
  rect,
  svgDocument,
  text,
  type Scale,
} from "./svg.js";

const PLOT_X: [number, number] = [DEFAULT_MARGIN.left, WIDTH - DEFAULT_MARGIN.right];
const PLOT_Y: [number, number] = [HEIGHT - DEFAULT_MARGIN.bottom, DEFAULT_MARGIN.top];

function groupBy<T>(rows: T[], key: (row: T) => string): Map<string, T[]> {
  const out = new Map<string, T[]>();
  for (const row of rows) {
    const k = key(row);
    const bucket = out.get(k);
    if (bucket) bucket.push(row);
    else out.set(k, [row]);
  }
  return out;
}

function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

/** Per-game proportion-vs-eps curves with the cross-game mean emphasised. */
export function renderEpsNash(rows: Row<"eps-nash">[]): string {
  const xScale = linearScale(extent(rows.map((r) => r.eps)), PLOT_X);
  const yScale = linearScale([0, 1], PLOT_Y);
  const parts: string[] = [];
  const byGame = groupBy(rows, (r) => String(r.game_id));
  for (const gameRows of byGame.values()) {
    gameRows.sort((a, b) => a.eps - b.eps);
    parts.push(
      polyline(
        gameRows.map((r) => [xScale(r.eps), yScale(r.proportion)]),
        { stroke: "#9ec5fe", "stroke-width": 1, opacity: 0.7 },
      ),
    );
  }
  const byEps = [...groupBy(rows, (r) => String(r.eps)).entries()]
    .map(([eps, group]) => [Number(eps), mean(group.map((r) => r.proportion))] as const)
    .sort((a, b) => a[0] - b[0]);
  parts.push(
    polyline(
      byEps.map(([eps, p]) => [xScale(eps), yScale(p)]),
      { stroke: PALETTE[0], "stroke-width": 2.5 },
    ),
  );
  parts.push(axes(xScale, yScale, { xLabel: "eps", yLabel: "proportion of eps-Nash profiles" }));
  parts.push(
    legend(
      [
        { label: "individual games", color: "#9ec5fe" },
        { label: `mean over ${byGame.size} games`, color: PALETTE[0] },
      ],
      PLOT_X[0] + 12,
      PLOT_Y[1] + 12,
    ),
  );
  return svgDocument("Proportion of profiles within eps of equilibrium", parts.join("\n"));
}

/** Mean sup-norm welfare estimation error as a function of the exponent rho. */
export function renderWelfareError(rows: Row<"welfare-error">[]): string {
  const sorted = [...rows].sort((a, b) => a.rho - b.rho);
  const xScale = linearScale(padDomain(extent(sorted.map((r) => r.rho))), PLOT_X);
  const yScale = linearScale(
    padDomain([0, Math.max(...sorted.map((r) => r.mean_sup_error))]),
    PLOT_Y,
  );
  const parts: string[] = [];
  for (const guide of [-1, 0, 1]) {
    if (guide < xScale.domain[0] || guide > xScale.domain[1]) continue;
    const x = xScale(guide);
    parts.push(
      line(x, PLOT_Y[0], x, PLOT_Y[1], { stroke: "#d0d7de", "stroke-dasharray": "4 3" }),
    );
    parts.push(text(x, PLOT_Y[1] - 4, `rho=${guide}`, { "text-anchor": "middle", "font-size": 10 }));
  }
  parts.push(polyline(sorted.map((r) => [xScale(r.rho), yScale(r.mean_sup_error)])));
  for (const r of sorted) {
    parts.push(circle(xScale(r.rho), yScale(r.mean_sup_error), 2.5, { fill: PALETTE[0] }));
  }
  parts.push(axes(xScale, yScale, { xLabel: "power-mean exponent rho", yLabel: "mean sup error" }));
  return svgDocument("Welfare estimation error across power-mean exponents", parts.join("\n"));
}

/** Step curves of the surviving-index proportion per variance regime. */
export function renderVariancePruning(rows: Row<"variance-pruning">[]): string {
  const xScale = logScale(extent(rows.map((r) => r.samples)), PLOT_X);
  const yScale = linearScale([0, 1.02], PLOT_Y);
  const parts: string[] = [];
  const regimes = [...groupBy(rows, (r) => r.regime).entries()];
  const entries: { label: string; color: string; dashed?: boolean }[] = [];
  regimes.forEach(([regime, group], i) => {
    const color = PALETTE[i % PALETTE.length];
    group.sort((a, b) => a.samples - b.samples);
    const step: [number, number][] = [];
    group.forEach((r, j) => {
      const x = xScale(r.samples);
      if (j > 0) step.push([x, step[step.length - 1][1]]);
      step.push([x, yScale(r.active_proportion)]);
    });
    parts.push(polyline(step, { stroke: color, "stroke-width": 2 }));
    for (const bound of ["lower_bound", "upper_bound"] as const) {
      parts.push(
        polyline(
          group.map((r) => [xScale(r.samples), yScale(r[bound])]),
          { stroke: color, "stroke-width": 1, "stroke-dasharray": "5 3", opacity: 0.8 },
        ),
      );
    }
    entries.push({ label: regime, color });
  });
  entries.push({ label: "bound envelopes", color: "#57606a", dashed: true });
  parts.push(
    axes(xScale, yScale, {
      xLabel: "samples per active index (log scale)",
      yLabel: "proportion of indices still active",
      xTicks: logTicks(xScale.domain),
    }),
  );
  parts.push(legend(entries, PLOT_X[1] - 220, PLOT_Y[1] + 12));
  return svgDocument("Index pruning rate by noise-variance regime", parts.join("\n"));
}

function logTicks([lo, hi]: [number, number]): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); e <= Math.floor(Math.log10(hi)); e++) {
    out.push(Math.pow(10, e));
  }
  if (out.length < 2) out.push(lo, hi);
  return out;
}

/** Scatter of total query cost against the accuracy each run achieved. */
export function renderPspVsGs(rows: Row<"psp-vs-gs">[]): string {
  const xScale = linearScale(padDomain(extent(rows.map((r) => r.eps_achieved))), PLOT_X);
  const yScale = logScale(extent(rows.map((r) => Math.max(r.queries, 1))), PLOT_Y);
  const parts: string[] = [];
  const algos = [...groupBy(rows, (r) => r.algorithm).entries()];
  const entries: { label: string; color: string }[] = [];
  algos.forEach(([algo, group], i) => {
    const color = PALETTE[i % PALETTE.length];
    for (const r of group) {
      parts.push(
        circle(xScale(r.eps_achieved), yScale(Math.max(r.queries, 1)), 4, {
          fill: color,
          opacity: 0.75,
        }),
      );
    }
    entries.push({ label: algo, color });
  });
  parts.push(
    axes(xScale, yScale, {
      xLabel: "eps achieved",
      yLabel: "oracle queries (log scale)",
      yTicks: logTicks(yScale.domain),
    }),
  );
  parts.push(legend(entries, PLOT_X[1] - 160, PLOT_Y[1] + 12));
  return svgDocument("Query cost versus achieved accuracy by algorithm", parts.join("\n"));
}

/** Jittered anarchy-gap draws with the theoretical band per condition. */
export function renderAnarchyGap(rows: Row<"anarchy-gap">[]): string {
  const conditions = [
    ...groupBy(rows, (r) => `${r.noise_model} / Lambda=${r.Lambda}`).entries(),
  ];
  const xScale = linearScale([-0.5, conditions.length - 0.5], PLOT_X);
  const values = rows.flatMap((r) => [r.ag_value, r.theory_lower, r.theory_upper]);
  const yScale = linearScale(padDomain(extent(values)), PLOT_Y);
  const parts: string[] = [];
  conditions.forEach(([label, group], i) => {
    const lo = Math.min(...group.map((r) => r.theory_lower));
    const hi = Math.max(...group.map((r) => r.theory_upper));
    const bandWidth = (PLOT_X[1] - PLOT_X[0]) / conditions.length - 12;
    parts.push(
      rect(xScale(i) - bandWidth / 2, yScale(hi), bandWidth, yScale(lo) - yScale(hi), {
        fill: PALETTE[i % PALETTE.length],
        opacity: 0.15,
      }),
    );
    for (const r of group) {
      // deterministic jitter keyed on draw_id so re-renders are identical
      const jitter = ((r.draw_id * 2654435761) % 1000) / 1000 - 0.5;
      parts.push(
        circle(xScale(i) + jitter * bandWidth * 0.8, yScale(r.ag_value), 3, {
          fill: PALETTE[i % PALETTE.length],
          opacity: 0.7,
        }),
      );
    }
    parts.push(
      text(xScale(i), PLOT_Y[0] + 18, label, { "text-anchor": "middle", "font-size": 10 }),
    );
  });
  parts.push(
    axes(xScale, yScale, { xLabel: "", yLabel: "anarchy gap estimate", xTicks: [] }),
  );
  return svgDocument("Anarchy-gap draws against theoretical bands", parts.join("\n"));
}

/** Success-rate bars per trial block against the 1 - delta target line. */
export function renderCoverage(rows: Row<"coverage">[]): string {
  const xScale = linearScale([-0.5, rows.length - 0.5], PLOT_X);
  const yLo = Math.min(0.9, ...rows.map((r) => r.success_rate), ...rows.map((r) => 1 - r.delta));
  const yScale = linearScale([Math.max(0, yLo - 0.02), 1.0], PLOT_Y);
  const parts: string[] = [];
  const barWidth = (PLOT_X[1] - PLOT_X[0]) / rows.length - 10;
  rows.forEach((r, i) => {
    parts.push(
      rect(
        xScale(i) - barWidth / 2,
        yScale(r.success_rate),
        barWidth,
        PLOT_Y[0] - yScale(r.success_rate),
        { fill: PALETTE[0], opacity: 0.8 },
      ),
    );
    parts.push(
      text(xScale(i), PLOT_Y[0] + 18, r.trial_block, { "text-anchor": "middle", "font-size": 10 }),
    );
  });
  const target = 1 - rows[0].delta;
  parts.push(
    line(PLOT_X[0], yScale(target), PLOT_X[1], yScale(target), {
      stroke: PALETTE[1],
      "stroke-width": 1.5,
      "stroke-dasharray": "6 3",
    }),
  );
  parts.push(
    text(PLOT_X[1] - 4, yScale(target) - 6, `target 1 - delta = ${target}`, {
      "text-anchor": "end",
      fill: PALETTE[1],
      "font-size": 11,
    }),
  );
  parts.push(axes(xScale, yScale, { xLabel: "", yLabel: "empirical success rate", xTicks: [] }));
  return svgDocument("Confidence-interval coverage by trial block", parts.join("\n"));
}

export const RENDERERS: { [K in Kind]: (rows: Row<K>[]) => string } = {
  "eps-nash": renderEpsNash,
  "welfare-error": renderWelfareError,
  "variance-pruning": renderVariancePruning,
  "psp-vs-gs": renderPspVsGs,
  "anarchy-gap": renderAnarchyGap,
  coverage: renderCoverage,
};

export function render<K extends Kind>(kind: K, rows: Row<K>[]): string {
  return RENDERERS[kind](rows);
}
