/** Parser for the harness CSV format: '#'-prefixed manifest lines, one header
 * row, numeric cells (empty cell = column not computed for that row). */

export interface RunTable {
  manifest: Record<string, string>;
  columns: string[];
  rows: number[][];
}

export function parseRunCsv(text: string, source: string): RunTable {
  const manifest: Record<string, string> = {};
  let header: string[] | null = null;
  const rows: number[][] = [];

  for (const line of text.split(/\r?\n/)) {
    if (line.startsWith('#')) {
      const body = line.slice(1);
      const eq = body.indexOf('=');
      if (eq >= 0) {
        manifest[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      }
      continue;
    }
    if (line.trim() === '') continue;
    if (header === null) {
      header = line.split(',').map((c) => c.trim());
      continue;
    }
    rows.push(line.split(',').map((tok) => (tok === '' ? NaN : Number(tok))));
  }

  if (header === null) {
    throw new Error(`${source}: missing column header row`);
  }
  if (!('version' in manifest)) {
    throw new Error(`${source}: missing manifest header (expected '# key = value' lines)`);
  }
  if (rows.length === 0) {
    throw new Error(`${source}: no data rows`);
  }
  return { manifest, columns: header, rows };
}

/** Extract one column; throws naming the column when it is absent or empty. */
export function column(table: RunTable, name: string, source: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`${source}: missing column '${name}'`);
  }
  const values = table.rows.map((row) => row[idx]);
  if (values.every((v) => Number.isNaN(v))) {
    throw new Error(`${source}: column '${name}' has no values`);
  }
  return values;
}
