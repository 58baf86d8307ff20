/** Parser for the harness summary files: '#'-prefixed manifest lines followed
 * by one JSON object per line. */

export interface SummaryEntry {
  kind: string;
  [key: string]: unknown;
}

export interface FitEntry {
  slope: number;
  intercept: number;
  r_squared: number;
  quantity?: string;
}

export function parseSummary(text: string, source: string): SummaryEntry[] {
  const entries: SummaryEntry[] = [];
  for (const line of text.split(/\r?\n/)) {
    const trimmed = line.trim();
    if (trimmed === '' || trimmed.startsWith('#')) continue;
    let parsed: unknown;
    try {
      parsed = JSON.parse(trimmed);
    } catch {
      throw new Error(`${source}: invalid JSON line: ${trimmed.slice(0, 60)}`);
    }
    if (typeof parsed !== 'object' || parsed === null || !('kind' in parsed)) {
      throw new Error(`${source}: summary entries must be objects with a 'kind'`);
    }
    entries.push(parsed as SummaryEntry);
  }
  if (entries.length === 0) {
    throw new Error(`${source}: no summary entries`);
  }
  return entries;
}

export function fitFor(entries: SummaryEntry[], quantity: string): FitEntry | undefined {
  for (const entry of entries) {
    if (entry.kind === 'fit' && entry.quantity === quantity) {
      return entry as unknown as FitEntry;
    }
  }
  return undefined;
}

export function numberField(entry: SummaryEntry, field: string, source: string): number {
  const value = entry[field];
  if (typeof value !== 'number' || !Number.isFinite(value)) {
    throw new Error(`${source}: entry field '${field}' is not a finite number`);
  }
  return value;
}
