import { createHash } from "crypto";
import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { CsvError, numberColumn, parseCsv, readTable } from "../src/csv";
import { leastSquares } from "../src/fit";
import { main } from "../src/cli";
import { renderIllposedSlope, renderNormSeries, renderRatioHist } from "../src/plots";

const GOLDEN = join(__dirname, "golden");
const SCAN = join(GOLDEN, "illposed_scan.csv");
const NORMS = join(GOLDEN, "simulate_norms.csv");
const PROBE = join(GOLDEN, "probe_linear.csv");

// image-hash regression baselines, recorded at first implementation
const FROZEN_HASHES: Record<string, string> = {
  "illposed-slope": "bd54d74afb2c86064caaf4474a0a0cf5dc16babe2aa1ec38fe6316fc4d3ae304",
  "norm-series": "fe6b4cd2a6b8c7e77b8c09cd0fb51fc1f6d36fa4d6e165a796be1d7b3e714e7a",
  "ratio-hist": "16ae74e09049258d49a3ba460c6c185491d7df141c53c413559203f4bc6e460c",
};

function sha256(text: string): string {
  return createHash("sha256").update(text).digest("hex");
}

describe("csv parsing", () => {
  it("reads schema, columns and rows", () => {
    const t = parseCsv("# dmkp-lab v1 demo\na,b\n1,2\n3,4\n", "inline");
    expect(t.schema).toBe("demo");
    expect(t.columns).toEqual(["a", "b"]);
    expect(numberColumn(t, "b")).toEqual([2, 4]);
  });

  it("rejects missing header, ragged rows, unknown columns", () => {
    expect(() => parseCsv("a,b\n1,2\n", "inline")).toThrow(CsvError);
    expect(() => parseCsv("# dmkp-lab v1 demo\na,b\n1\n", "inline")).toThrow(CsvError);
    const t = parseCsv("# dmkp-lab v1 demo\na,b\n1,2\n", "inline");
    expect(() => numberColumn(t, "c")).toThrow(CsvError);
  });

  it("rejects empty tables and schema mismatches", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "# dmkp-lab v1 illposed-scan\nN,s,eps,norm,slope\n");
    expect(() => readTable(empty, (s) => s === "illposed-scan")).toThrow(CsvError);
    expect(() => renderIllposedSlope(PROBE)).toThrow(CsvError);
  });
});

describe("least squares", () => {
  it("recovers an exact line", () => {
    const xs = [1, 2, 3, 4];
    const { slope, intercept } = leastSquares(xs, xs.map((x) => 3 * x - 1));
    expect(slope).toBeCloseTo(3, 12);
    expect(intercept).toBeCloseTo(-1, 12);
  });
});

describe("norm-growth slope figure", () => {
  const svg = renderIllposedSlope(SCAN);

  it("is byte-stable on the golden input", () => {
    expect(sha256(svg)).toBe(FROZEN_HASHES["illposed-slope"]);
    expect(sha256(renderIllposedSlope(SCAN))).toBe(FROZEN_HASHES["illposed-slope"]);
  });

  it("annotates slopes equal to the CSV slope column to 1e-6", () => {
    const table = readTable(SCAN, (s) => s === "illposed-scan");
    const csvSlopes = [...new Set(numberColumn(table, "slope"))].sort((a, b) => a - b);
    const drawn = [...svg.matchAll(/class="fit-line" data-slope="([^"]+)"/g)]
      .map((m) => Number(m[1]))
      .sort((a, b) => a - b);
    expect(drawn.length).toBe(csvSlopes.length);
    drawn.forEach((v, i) => expect(Math.abs(v - csvSlopes[i])).toBeLessThanOrEqual(1e-6));
  });

  it("draws the growth-law reference line at the configured eps", () => {
    const table = readTable(SCAN, (s) => s === "illposed-scan");
    const sVals = numberColumn(table, "s");
    const epsVals = numberColumn(table, "eps");
    const expected = [...new Set(sVals.map((s, i) => -s - 0.5 - epsVals[i]))].sort((a, b) => a - b);
    const drawn = [...svg.matchAll(/class="reference-line" data-ref-slope="([^"]+)"/g)]
      .map((m) => Number(m[1]))
      .sort((a, b) => a - b);
    expect(drawn).toEqual(expected);
  });

  it("renders one colored series per s with a legend", () => {
    expect((svg.match(/class="legend"/g) ?? []).length).toBe(2);
    expect((svg.match(/class="scatter"/g) ?? []).length).toBe(8);
    const colors = new Set([...svg.matchAll(/fill="(#[0-9a-f]+)" class="scatter"/g)].map((m) => m[1]));
    expect(colors.size).toBe(2);
  });

  it("aborts when a slope column disagrees with the data", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const bad = join(dir, "bad.csv");
    const lines = readFileSync(SCAN, "utf8").trim().split("\n");
    const doctored = lines.map((ln, i) =>
      i < 2 ? ln : ln.replace(/,[^,]*$/, ",0.999")
    );
    writeFileSync(bad, doctored.join("\n") + "\n");
    expect(() => renderIllposedSlope(bad)).toThrow(/slope column/);
  });

  it("requires at least four rows per s", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const short = join(dir, "short.csv");
    const lines = readFileSync(SCAN, "utf8").trim().split("\n");
    writeFileSync(short, lines.slice(0, 5).join("\n") + "\n"); // 3 rows of s=-0.75
    expect(() => renderIllposedSlope(short)).toThrow(/at least 4 rows/);
  });
});

describe("norm time-series figure", () => {
  const svg = renderNormSeries(NORMS);

  it("is byte-stable on the golden input", () => {
    expect(sha256(svg)).toBe(FROZEN_HASHES["norm-series"]);
  });

  it("plots the residual on a log axis covering the 1e-6 criterion", () => {
    const m = svg.match(/class="criterion-line" data-level="1e-06"[^]*?y1="([0-9.]+)"/) ??
      svg.match(/y1="([0-9.]+)"[^>]*class="criterion-line"/);
    expect(m).not.toBeNull();
    const y = Number(m![1]);
    // the line must lie strictly inside the drawing area, i.e. the axis range covers 1e-6
    expect(y).toBeGreaterThan(20);
    expect(y).toBeLessThan(460);
    expect(svg).toContain('class="series-residual"');
  });
});

describe("ratio histogram figure", () => {
  it("is byte-stable and bins every ratio", () => {
    const svg = renderRatioHist(PROBE);
    expect(sha256(svg)).toBe(FROZEN_HASHES["ratio-hist"]);
    expect(svg).toContain("n = 40");
    expect((svg.match(/class="bar"/g) ?? []).length).toBeGreaterThan(3);
  });

  it("accepts any probe-* schema and only those", () => {
    expect(() => renderRatioHist(SCAN)).toThrow(CsvError);
  });
});

describe("cli", () => {
  it("renders through the subcommand and reports bad usage", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const out = join(dir, "out.svg");
    expect(main(["illposed-slope", SCAN, out])).toBe(0);
    expect(sha256(readFileSync(out, "utf8"))).toBe(FROZEN_HASHES["illposed-slope"]);
    expect(main(["unknown-kind", SCAN, out])).toBe(2);
    expect(main(["norm-series", join(dir, "missing.csv"), out])).toBe(2);
    expect(main(["norm-series", SCAN, out])).toBe(2); // schema mismatch
  });
});
