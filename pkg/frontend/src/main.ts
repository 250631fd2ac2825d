/**
 * CLI: --csv <path> --figure <3|4|5> --out <path.svg>
 * Exit 0 on success, 1 on usage/input errors (message names the offender).
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseCsv } from "./csv.js";
import { buildSeries, figureSpec } from "./figures.js";
import { renderSvg } from "./svg.js";

interface Args {
  csv: string;
  figure: number;
  out: string;
}

function usage(): never {
  console.error("usage: compnoma-plot --csv sweep.csv --figure {3,4,5} --out figure.svg");
  process.exit(1);
}

function parseArgs(argv: string[]): Args {
  const args: Partial<Args> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) usage();
    switch (flag) {
      case "--csv":
        args.csv = value;
        break;
      case "--figure":
        args.figure = Number(value);
        break;
      case "--out":
        args.out = value;
        break;
      default:
        console.error(`unknown flag ${flag}`);
        usage();
    }
  }
  if (!args.csv || !args.out || args.figure === undefined) usage();
  return args as Args;
}

export function run(argv: string[]): number {
  const args = parseArgs(argv);
  try {
    const spec = figureSpec(args.figure);
    const table = parseCsv(readFileSync(args.csv, "utf8"));
    const svg = renderSvg(buildSeries(table, spec), spec);
    writeFileSync(args.out, svg);
    console.error(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

process.exit(run(process.argv.slice(2)));
