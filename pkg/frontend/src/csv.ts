/**
 * Minimal reader for the simulator's sweep CSV. The schema is plain
 * comma-separated with a fixed header and no quoting, so a split is enough.
 */

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export class MissingColumnError extends Error {
  constructor(public readonly column: string) {
    super(`CSV is missing required column '${column}'`);
    this.name = "MissingColumnError";
  }
}

export class EmptySelectionError extends Error {
  constructor(public readonly filter: string) {
    super(`no rows left after filtering on ${filter}`);
    this.name = "EmptySelectionError";
  }
}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("CSV is empty");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`row ${i + 2} has ${parts.length} fields, expected ${columns.length}`);
    }
    const row: Record<string, string> = {};
    columns.forEach((c, j) => (row[c] = parts[j].trim()));
    return row;
  });
  return { columns, rows };
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const column of needed) {
    if (!table.columns.includes(column)) {
      throw new MissingColumnError(column);
    }
  }
}

export function numeric(row: Record<string, string>, column: string): number {
  const value = Number(row[column]);
  if (Number.isNaN(value)) {
    throw new Error(`non-numeric value '${row[column]}' in column '${column}'`);
  }
  return value;
}
