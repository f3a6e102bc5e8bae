import { describe, expect, it } from "vitest";
import { parseCsv } from "../src/csv.js";

describe("parseCsv", () => {
  it("returns header-keyed records", () => {
    const rows = parseCsv("a,b\n1,2\n3,4\n");
    expect(rows).toEqual([
      { a: "1", b: "2" },
      { a: "3", b: "4" },
    ]);
  });

  it("preserves commas inside quoted fields", () => {
    const rows = parseCsv('regime,value\n"beta(0.5,3)",1\n');
    expect(rows[0].regime).toBe("beta(0.5,3)");
    expect(rows[0].value).toBe("1");
  });

  it("skips trailing blank lines", () => {
    expect(parseCsv("a,b\n1,2\n\n\n")).toHaveLength(1);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(/parse error/);
  });
});
