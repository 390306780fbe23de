#!/usr/bin/env node
/**
 * dmkp-lab-figures <kind> <input.csv> <output.svg>
 *
 * Kinds: illposed-slope, norm-series, ratio-hist. Exit codes: 0 success,
 * 2 bad input (missing file, schema mismatch, malformed table).
 */

import { writeFileSync } from "fs";
import { CsvError } from "./csv";
import { renderIllposedSlope, renderNormSeries, renderRatioHist } from "./plots";

const RENDERERS: Record<string, (csv: string) => string> = {
  "illposed-slope": renderIllposedSlope,
  "norm-series": renderNormSeries,
  "ratio-hist": renderRatioHist,
};

export function main(argv: string[]): number {
  if (argv.length !== 3 || !(argv[0] in RENDERERS)) {
    process.stderr.write(
      `usage: dmkp-lab-figures {${Object.keys(RENDERERS).join("|")}} input.csv output.svg\n`
    );
    return 2;
  }
  const [kind, input, output] = argv;
  try {
    const svg = RENDERERS[kind](input);
    writeFileSync(output, svg);
    return 0;
  } catch (err) {
    if (err instanceof CsvError || (err as NodeJS.ErrnoException).code === "ENOENT") {
      process.stderr.write(`error: ${(err as Error).message}\n`);
      return 2;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exitCode = main(process.argv.slice(2));
}
