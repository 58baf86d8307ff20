#!/usr/bin/env node
/** nlslab-plot <kind> --in <files...> --out <image.svg> */

import { mkdirSync, readFileSync, writeFileSync } from 'node:fs';
import { dirname } from 'node:path';
import yargs from 'yargs';

import { buildFigure, Kind, KINDS, NamedInput } from './kinds.js';

export function run(argv: string[]): number {
  const args = yargs(argv)
    .scriptName('nlslab-plot')
    .command('$0 <kind>', 'render a figure from nlslab harness outputs', (y) =>
      y
        .positional('kind', {
          describe: 'figure kind',
          choices: KINDS as unknown as string[],
          demandOption: true,
        })
        .option('in', {
          describe: 'input CSV / JSONL files',
          type: 'string',
          array: true,
          demandOption: true,
        })
        .option('out', {
          describe: 'output SVG path',
          type: 'string',
          demandOption: true,
        }),
    )
    .strict()
    .exitProcess(false)
    .parseSync();

  const kind = args.kind as Kind;
  const paths = args.in as string[];
  const out = args.out as string;

  const inputs: NamedInput[] = paths.map((path) => ({
    source: path,
    text: readFileSync(path, 'utf8'),
  }));
  const svg = buildFigure(kind, inputs);
  mkdirSync(dirname(out) || '.', { recursive: true });
  writeFileSync(out, svg);
  console.log(`wrote ${out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  (process.argv[1].endsWith('cli.js') || process.argv[1].endsWith('nlslab-plot'));
if (invokedDirectly) {
  try {
    process.exitCode = run(process.argv.slice(2));
  } catch (error) {
    console.error(error instanceof Error ? error.message : String(error));
    process.exitCode = 1;
  }
}
