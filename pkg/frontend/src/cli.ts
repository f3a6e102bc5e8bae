#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { parseCsv } from "./csv.js";
import { render } from "./figures.js";
import { KINDS, SchemaMismatchError, validateRows, type Kind } from "./schemas.js";

async function main(): Promise<void> {
  const argv = await yargs(hideBin(process.argv))
    .usage("Render an experiment CSV to an SVG figure")
    .option("in", { type: "string", demandOption: true, describe: "input CSV path" })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .option("kind", {
      choices: KINDS,
      demandOption: true,
      describe: "figure kind; must match the CSV's schema_version",
    })
    .strict()
    .parse();

  const kind = argv.kind as Kind;
  const records = parseCsv(readFileSync(argv.in, "utf8"));
  const rows = validateRows(kind, records);
  writeFileSync(argv.out, render(kind, rows));
  console.log(`wrote ${argv.out} (${rows.length} rows, kind ${kind})`);
}

main().catch((err: unknown) => {
  const message = err instanceof Error ? err.message : String(err);
  console.error(`error: ${message}`);
  process.exitCode = err instanceof SchemaMismatchError ? 2 : 1;
});
