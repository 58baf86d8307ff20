/** The five figure kinds, mapping harness outputs to figure data.
 *
 * drift           summary.jsonl  -> smoothed-energy drift vs cutoff (log-log,
 *                                   fitted line + slope annotation)
 * commutator      summary.jsonl  -> commutator residual vs cutoff (log-log)
 * distance-trace  stability CSVs -> cylinder distance vs time (linear)
 * exit-time       summary.jsonl  -> exit time vs 1/sigma (log-log + fit)
 * growth          growth CSVs    -> Sobolev norm vs time (linear), slope
 *                                   annotation when a summary is supplied
 */

import { column, parseRunCsv } from './csv.js';
import { fitFor, numberField, parseSummary, SummaryEntry } from './summary.js';
import { FigureData, renderFigure, Series } from './svg.js';

export const KINDS = ['drift', 'commutator', 'distance-trace', 'exit-time', 'growth'] as const;
export type Kind = (typeof KINDS)[number];

export interface NamedInput {
  source: string;
  text: string;
}

function annotationFrom(fit: { slope: number; r_squared: number }): string {
  return `slope = ${fit.slope.toFixed(2)} (r^2 = ${fit.r_squared.toFixed(3)})`;
}

function driftFigure(inputs: NamedInput[]): FigureData {
  const series: Series[] = [];
  let fitLine: FigureData['fitLine'];
  let annotation: string | undefined;
  for (const input of inputs) {
    const entries = parseSummary(input.text, input.source);
    const drifts = entries.filter((e) => e.kind === 'drift');
    if (drifts.length === 0) {
      throw new Error(`${input.source}: no drift entries`);
    }
    series.push({
      label: input.source.replace(/^.*\//, ''),
      points: drifts.map((e) => [
        numberField(e, 'N', input.source),
        numberField(e, 'drift_hamiltonian', input.source),
      ]),
    });
    const fit = fitFor(entries, 'hamiltonian_smoothed_drift');
    if (fit && !fitLine) {
      fitLine = { slope: fit.slope, intercept: fit.intercept };
      annotation = annotationFrom(fit);
    }
  }
  return {
    title: 'Smoothed-energy drift vs cutoff',
    xLabel: 'cutoff N',
    yLabel: 'sup_t |H(Su)(t) - H(Su)(0)|',
    xLog: true,
    yLog: true,
    series,
    fitLine,
    annotation,
  };
}

function commutatorFigure(inputs: NamedInput[]): FigureData {
  const series: Series[] = [];
  for (const input of inputs) {
    const entries = parseSummary(input.text, input.source);
    const drifts = entries.filter((e) => e.kind === 'drift');
    if (drifts.length === 0) {
      throw new Error(`${input.source}: no drift entries`);
    }
    series.push({
      label: input.source.replace(/^.*\//, ''),
      points: drifts.map((e) => [
        numberField(e, 'N', input.source),
        numberField(e, 'commutator_initial', input.source),
      ]),
    });
  }
  return {
    title: 'Commutator residual vs cutoff',
    xLabel: 'cutoff N',
    yLabel: '|| S F(u) - F(S u) ||_2',
    xLog: true,
    yLog: true,
    series,
  };
}

function distanceTraceFigure(inputs: NamedInput[]): FigureData {
  const series: Series[] = [];
  for (const input of inputs) {
    const table = parseRunCsv(input.text, input.source);
    const t = column(table, 't', input.source);
    const dist = column(table, 'cylinder_distance', input.source);
    const sigma = table.manifest['sigma'];
    series.push({
      label: sigma !== undefined ? `sigma = ${sigma}` : input.source.replace(/^.*\//, ''),
      points: t.map((x, i) => [x, dist[i]] as [number, number]),
    });
  }
  return {
    title: 'Distance to the ground-state cylinder',
    xLabel: 't',
    yLabel: 'dist_{H^s}(u(t), cylinder)',
    xLog: false,
    yLog: false,
    series,
  };
}

function exitTimeFigure(inputs: NamedInput[]): FigureData {
  const series: Series[] = [];
  let fitLine: FigureData['fitLine'];
  let annotation: string | undefined;
  for (const input of inputs) {
    const entries = parseSummary(input.text, input.source);
    const points: Array<[number, number]> = [];
    for (const entry of entries.filter((e: SummaryEntry) => e.kind === 'exit')) {
      const sigma = numberField(entry, 'sigma', input.source);
      const exit = entry['exit_time'];
      if (sigma > 0 && typeof exit === 'number' && exit > 0) {
        points.push([1.0 / sigma, exit]);
      }
    }
    if (points.length === 0) {
      throw new Error(`${input.source}: no finite exit times`);
    }
    series.push({ label: input.source.replace(/^.*\//, ''), points });
    const fit = fitFor(entries, 'exit_time');
    if (fit && !fitLine) {
      fitLine = { slope: fit.slope, intercept: fit.intercept };
      annotation = annotationFrom(fit);
    }
  }
  return {
    title: 'Exit time vs perturbation size',
    xLabel: '1 / sigma',
    yLabel: 'exit time',
    xLog: true,
    yLog: true,
    series,
    fitLine,
    annotation,
  };
}

function growthFigure(inputs: NamedInput[]): FigureData {
  const series: Series[] = [];
  let annotation: string | undefined;
  for (const input of inputs) {
    if (input.source.endsWith('.jsonl')) {
      const fit = fitFor(parseSummary(input.text, input.source), 'sobolev_running_max');
      if (fit) annotation = annotationFrom(fit);
      continue;
    }
    const table = parseRunCsv(input.text, input.source);
    const t = column(table, 't', input.source);
    const sob = column(table, 'sobolev_s', input.source);
    series.push({
      label: input.source.replace(/^.*\//, ''),
      points: t.map((x, i) => [x, sob[i]] as [number, number]),
    });
  }
  if (series.length === 0) {
    throw new Error('growth figure needs at least one CSV trace input');
  }
  return {
    title: 'Sobolev norm growth',
    xLabel: 't',
    yLabel: '||u(t)||_{H^s}',
    xLog: false,
    yLog: false,
    series,
    annotation,
  };
}

export function buildFigure(kind: Kind, inputs: NamedInput[]): string {
  if (inputs.length === 0) {
    throw new Error('at least one input file is required');
  }
  switch (kind) {
    case 'drift':
      return renderFigure(driftFigure(inputs));
    case 'commutator':
      return renderFigure(commutatorFigure(inputs));
    case 'distance-trace':
      return renderFigure(distanceTraceFigure(inputs));
    case 'exit-time':
      return renderFigure(exitTimeFigure(inputs));
    case 'growth':
      return renderFigure(growthFigure(inputs));
    default: {
      const never: never = kind;
      throw new Error(`unknown figure kind ${String(never)}`);
    }
  }
}
