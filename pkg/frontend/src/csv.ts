/**
 * Versioned CSV reader for dmkp-lab outputs.
 *
 * Every table starts with "# dmkp-lab v1 <schema>" followed by a header
 * row. Plot kinds bind to schemas, not to the producing code, so a
 * mismatched or missing header is a hard error.
 */

import { readFileSync } from "fs";

export const SCHEMA_PREFIX = "# dmkp-lab v1 ";

export class CsvError extends Error {}

export interface Table {
  schema: string;
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string, path: string): Table {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length < 2 || !lines[0].startsWith(SCHEMA_PREFIX)) {
    throw new CsvError(`${path}: missing "${SCHEMA_PREFIX}<schema>" header line`);
  }
  const schema = lines[0].slice(SCHEMA_PREFIX.length).trim();
  const columns = lines[1].split(",");
  const rows = lines.slice(2).map((ln) => ln.split(","));
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new CsvError(`${path}: row has ${row.length} fields, header has ${columns.length}`);
    }
  }
  return { schema, columns, rows };
}

export function readTable(path: string, schemaCheck: (schema: string) => boolean): Table {
  const table = parseCsv(readFileSync(path, "utf8"), path);
  if (!schemaCheck(table.schema)) {
    throw new CsvError(`${path}: schema "${table.schema}" does not match this plot kind`);
  }
  if (table.rows.length === 0) {
    throw new CsvError(`${path}: table has no data rows`);
  }
  return table;
}

export function numberColumn(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(`missing column "${name}" (have: ${table.columns.join(", ")})`);
  }
  return table.rows.map((row) => {
    const v = Number(row[idx]);
    if (!Number.isFinite(v) && row[idx] !== "nan") {
      throw new CsvError(`column "${name}": cannot parse "${row[idx]}"`);
    }
    return v;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(`missing column "${name}" (have: ${table.columns.join(", ")})`);
  }
  return table.rows.map((row) => row[idx]);
}
