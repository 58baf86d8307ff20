import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it } from 'vitest';

import { buildFigure, Kind, NamedInput } from '../src/kinds.js';

const FIXTURES = join(__dirname, 'fixtures');

function fixture(name: string): NamedInput {
  return { source: name, text: readFileSync(join(FIXTURES, name), 'utf8') };
}

const KIND_INPUTS: Record<Kind, NamedInput[]> = {
  drift: [fixture('drift_summary.jsonl')],
  commutator: [fixture('drift_summary.jsonl')],
  'distance-trace': [fixture('stability_sigma0.02.csv'), fixture('stability_sigma0.01.csv')],
  'exit-time': [fixture('stability_summary.jsonl')],
  growth: [fixture('growth.csv')],
};

describe('all five kinds render from real harness outputs', () => {
  for (const [kind, inputs] of Object.entries(KIND_INPUTS)) {
    it(`renders ${kind}`, () => {
      const svg = buildFigure(kind as Kind, inputs);
      expect(svg.startsWith('<svg')).toBe(true);
      expect(svg).toContain('polyline');
      expect(svg.trim().endsWith('</svg>')).toBe(true);
    });
  }
});

describe('figure content', () => {
  it('drift figure annotates the summary fit slope', () => {
    const svg = buildFigure('drift', KIND_INPUTS.drift);
    const match = svg.match(/slope = (-?\d+\.\d+)/);
    expect(match).not.toBeNull();
    // the fixture's recorded fit slope, to the annotation's 2 decimals
    expect(Number(match![1])).toBeCloseTo(-2.64, 2);
    expect(svg).toContain('stroke-dasharray');
  });

  it('distance-trace overlays carry a legend keyed by sigma', () => {
    const svg = buildFigure('distance-trace', KIND_INPUTS['distance-trace']);
    expect(svg).toContain('sigma = 0.02');
    expect(svg).toContain('sigma = 0.01');
  });

  it('re-rendering is byte-identical', () => {
    for (const [kind, inputs] of Object.entries(KIND_INPUTS)) {
      const first = buildFigure(kind as Kind, inputs);
      const second = buildFigure(kind as Kind, inputs);
      expect(second).toBe(first);
    }
  });
});

describe('synthetic slope -1 drift data', () => {
  function syntheticSummary(slope: number): NamedInput {
    const lines = ['# nlslab-run v1', '# version = 0.1.0', '# blend = smoothstep-log'];
    for (const n of [8, 16, 32, 64]) {
      lines.push(
        JSON.stringify({
          kind: 'drift',
          N: n,
          drift_hamiltonian: 0.5 * Math.pow(n, slope),
          drift_lyapunov: 1.0 * Math.pow(n, slope),
          commutator_initial: 0.1 * Math.pow(n, slope),
        }),
      );
    }
    lines.push(
      JSON.stringify({
        kind: 'fit',
        quantity: 'hamiltonian_smoothed_drift',
        slope,
        intercept: Math.log(0.5),
        r_squared: 1.0,
      }),
    );
    return { source: 'synthetic_summary.jsonl', text: lines.join('\n') + '\n' };
  }

  it('annotated slope reads -1.00 within 0.02', () => {
    const svg = buildFigure('drift', [syntheticSummary(-1.0)]);
    const match = svg.match(/slope = (-?\d+\.\d+)/);
    expect(match).not.toBeNull();
    expect(Math.abs(Number(match![1]) - -1.0)).toBeLessThanOrEqual(0.02);
  });
});

describe('error handling', () => {
  it('names a missing column', () => {
    const table = fixture('growth.csv');
    const mangled = {
      source: 'mangled.csv',
      text: table.text.replace('sobolev_s', 'sobolev_gone'),
    };
    expect(() => buildFigure('growth', [mangled])).toThrow(/missing column 'sobolev_s'/);
  });

  it('rejects empty data', () => {
    const headerOnly = {
      source: 'empty.csv',
      text: '# nlslab-run v1\n# version = 0.1.0\nt,mass\n',
    };
    expect(() => buildFigure('growth', [headerOnly])).toThrow(/no data rows/);
  });

  it('rejects empty input list', () => {
    expect(() => buildFigure('drift', [])).toThrow(/at least one input/);
  });

  it('rejects summaries without the needed entries', () => {
    const noDrift = {
      source: 'no_drift.jsonl',
      text: '# nlslab-run v1\n{"kind": "fit", "quantity": "x", "slope": 1, "intercept": 0, "r_squared": 1}\n',
    };
    expect(() => buildFigure('drift', [noDrift])).toThrow(/no drift entries/);
  });
});
