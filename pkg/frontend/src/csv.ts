/**
 * Minimal CSV reading with strict schema checks.
 *
 * The upstream tool writes a single header row, comma delimiter, LF line
 * endings and no quoting, so parsing is a straight split. Schema mismatches
 * must surface as actionable errors naming the offending columns.
 */

import { readFileSync } from "fs";

export class SchemaError extends Error {}

export interface Table {
  path: string;
  columns: string[];
  rows: string[][];
}

export function readCsv(path: string): Table {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((ln) => ln.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${path}: empty file, expected a header row`);
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((ln, i) => {
    const cells = ln.split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${path}: row ${i + 2} has ${cells.length} cells, header has ${columns.length}`,
      );
    }
    return cells;
  });
  return { path, columns, rows };
}

export function requireColumns(table: Table, expected: string[]): void {
  const got = table.columns.join(",");
  const want = expected.join(",");
  if (got !== want) {
    throw new SchemaError(
      `${table.path}: schema mismatch: expected columns [${want}], got [${got}]`,
    );
  }
}

export function numericColumn(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `${table.path}: missing column '${name}' (has [${table.columns.join(",")}])`,
    );
  }
  return table.rows.map((r, i) => {
    const v = Number(r[idx]);
    if (!Number.isFinite(v)) {
      throw new SchemaError(
        `${table.path}: row ${i + 2}, column '${name}': not a finite number: '${r[idx]}'`,
      );
    }
    return v;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `${table.path}: missing column '${name}' (has [${table.columns.join(",")}])`,
    );
  }
  return table.rows.map((r) => r[idx]);
}

/** Classify an input file by its header. */
export type CsvKind =
  | "potential"
  | "landscape"
  | "grid"
  | "contour"
  | "folds"
  | "trajectory"
  | "sweep"
  | "unknown";

export function classify(table: Table): CsvKind {
  const header = table.columns.join(",");
  switch (header) {
    case "coord,V":
      return "potential";
    case "coord,param,V,branch_flag":
      return "landscape";
    case "theta,P,delta":
      return "grid";
    case "theta,P":
      return "contour";
    case "branch,s_star,theta_c,P_c":
      return "folds";
    case "t,state1":
    case "t,state1,state2":
      return "trajectory";
    case "param,settled_state,jump":
      return "sweep";
    default:
      return "unknown";
  }
}
