#!/usr/bin/env node
/**
 * render_figure --fig <id> --in <paths...> --out <path>
 *
 * Reads the analysis tool's CSV/JSON outputs and writes an SVG image.
 * Exit codes: 0 ok, 1 input/schema error, 2 usage error.
 */

import { writeFileSync } from "fs";
import { SchemaError } from "./csv";
import { FIGURE_IDS, renderFigure } from "./render";

interface Args {
  fig: string;
  inputs: string[];
  out: string;
}

function usage(): string {
  return (
    "usage: render_figure --fig <id> --in <paths...> --out <path>\n" +
    `  ids: ${FIGURE_IDS.join(", ")}\n` +
    "  2.1/3.2: two potential CSVs; 2.2/3.1: one landscape CSV;\n" +
    "  4.1: discriminant grid CSV + contour CSV;\n" +
    "  4.2: two or more landscape CSVs (+ optional fold-curve CSV)"
  );
}

export function parseArgs(argv: string[]): Args {
  let fig: string | null = null;
  let out: string | null = null;
  const inputs: string[] = [];
  let i = 0;
  while (i < argv.length) {
    const arg = argv[i];
    if (arg === "--fig") {
      fig = argv[++i];
    } else if (arg === "--out") {
      out = argv[++i];
    } else if (arg === "--in") {
      i += 1;
      while (i < argv.length && !argv[i].startsWith("--")) {
        inputs.push(argv[i]);
        i += 1;
      }
      continue;
    } else {
      throw new Error(`unknown argument '${arg}'\n${usage()}`);
    }
    i += 1;
  }
  if (!fig || !out || inputs.length === 0) {
    throw new Error(`--fig, --in and --out are all required\n${usage()}`);
  }
  return { fig, inputs, out };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  try {
    const svg = renderFigure(args.fig, args.inputs);
    writeFileSync(args.out, svg, "utf8");
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
