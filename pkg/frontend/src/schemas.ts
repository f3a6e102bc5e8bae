import { z } from "zod";

const num = z.coerce.number();
const int = z.coerce.number().int();

export const KINDS = [
  "eps-nash",
  "welfare-error",
  "variance-pruning",
  "psp-vs-gs",
  "anarchy-gap",
  "coverage",
] as const;

export type Kind = (typeof KINDS)[number];

/** Expected schema_version value for each figure kind. */
export const SCHEMA_VERSIONS: Record<Kind, string> = {
  "eps-nash": "eps-nash/1",
  "welfare-error": "welfare-error/1",
  "variance-pruning": "variance-pruning/1",
  "psp-vs-gs": "psp-vs-gs/1",
  "anarchy-gap": "anarchy-gap/1",
  coverage: "coverage/1",
};

export const ROW_SCHEMAS = {
  "eps-nash": z.object({
    schema_version: z.string(),
    eps: num,
    game_id: int,
    proportion: num.min(0).max(1),
  }),
  "welfare-error": z.object({
    schema_version: z.string(),
    rho: num,
    mean_sup_error: num.min(0),
  }),
  "variance-pruning": z.object({
    schema_version: z.string(),
    regime: z.string().min(1),
    samples: int.positive(),
    active_proportion: num.min(0).max(1),
    lower_bound: num.min(0).max(1),
    upper_bound: num.min(0).max(1),
  }),
  "psp-vs-gs": z.object({
    schema_version: z.string(),
    algorithm: z.string().min(1),
    target_or_m: num,
    eps_achieved: num,
    data: num.nonnegative(),
    queries: num.nonnegative(),
  }),
  "anarchy-gap": z.object({
    schema_version: z.string(),
    Lambda: num.min(0),
    noise_model: z.string().min(1),
    draw_id: int,
    ag_value: num,
    theory_lower: num,
    theory_upper: num,
  }),
  coverage: z.object({
    schema_version: z.string(),
    trial_block: z.string().min(1),
    success_rate: num.min(0).max(1),
    delta: num.min(0).max(1),
  }),
} as const;

export type Row<K extends Kind> = z.infer<(typeof ROW_SCHEMAS)[K]>;

export class SchemaMismatchError extends Error {
  constructor(kind: Kind, found: string) {
    super(
      `schema version mismatch for kind '${kind}': expected ` +
        `'${SCHEMA_VERSIONS[kind]}', found '${found}'`,
    );
    this.name = "SchemaMismatchError";
  }
}

/** Validate raw CSV records for a figure kind; throws on any mismatch. */
export function validateRows<K extends Kind>(
  kind: K,
  records: Record<string, string>[],
): Row<K>[] {
  if (records.length === 0) {
    throw new Error(`no data rows for kind '${kind}'`);
  }
  const expected = SCHEMA_VERSIONS[kind];
  for (const record of records) {
    const found = record.schema_version ?? "<missing>";
    if (found !== expected) {
      throw new SchemaMismatchError(kind, found);
    }
  }
  return records.map((record, i) => {
    const parsed = ROW_SCHEMAS[kind].safeParse(record);
    if (!parsed.success) {
      const issue = parsed.error.issues[0];
      throw new Error(
        `row ${i + 1} invalid for kind '${kind}': ` +
          `${issue.path.join(".")}: ${issue.message}`,
      );
    }
    return parsed.data as Row<K>;
  });
}
