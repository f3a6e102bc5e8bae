import Papa from "papaparse";

/**
 * Parse CSV text into header-keyed string records.
 *
 * Quoted fields are honoured, so regime labels like "beta(0.5,3)" survive
 * their embedded commas.
 */
export function parseCsv(text: string): Record<string, string>[] {
  const result = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fatal = result.errors.filter((e) => e.code !== "UndetectableDelimiter");
  if (fatal.length > 0) {
    const first = fatal[0];
    throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  return result.data;
}
