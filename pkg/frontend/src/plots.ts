/**
 * The three figure renderers.
 *
 * These never recompute physics: every plotted number comes from a CSV
 * column. The only arithmetic is presentation (log axes, histogram
 * binning) plus one guard: the norm-growth fit line drawn through the
 * scatter must reproduce the slope column to 1e-6 or rendering aborts.
 */

import { CsvError, numberColumn, readTable, stringColumn, Table } from "./csv";
import { leastSquares } from "./fit";
import { fmt, Scale, seriesColor, Svg, HEIGHT, WIDTH } from "./svg";

const M = { left: 64, right: 24, top: 40, bottom: 52 };

function xRange(): [number, number] {
  return [M.left, WIDTH - M.right];
}

function yRange(): [number, number] {
  return [HEIGHT - M.bottom, M.top]; // svg y grows downward
}

interface SlopeGroup {
  s: number;
  eps: number;
  n: number[];
  norm: number[];
  slope: number;
}

export function groupBySobolevIndex(table: Table): SlopeGroup[] {
  const n = numberColumn(table, "N");
  const s = numberColumn(table, "s");
  const eps = numberColumn(table, "eps");
  const norm = numberColumn(table, "norm");
  const slope = numberColumn(table, "slope");
  const groups = new Map<number, SlopeGroup>();
  for (let i = 0; i < n.length; i++) {
    let g = groups.get(s[i]);
    if (!g) {
      g = { s: s[i], eps: eps[i], n: [], norm: [], slope: slope[i] };
      groups.set(s[i], g);
    }
    g.n.push(n[i]);
    g.norm.push(norm[i]);
    if (g.slope !== slope[i]) {
      throw new CsvError(`inconsistent slope column within s = ${s[i]}`);
    }
  }
  for (const g of groups.values()) {
    if (g.n.length < 4) {
      throw new CsvError(`need at least 4 rows per s for a slope figure (s = ${g.s} has ${g.n.length})`);
    }
  }
  return [...groups.values()].sort((a, b) => a.s - b.s);
}

export function renderIllposedSlope(csvPath: string): string {
  const table = readTable(csvPath, (sc) => sc === "illposed-scan");
  const groups = groupBySobolevIndex(table);

  const allN = groups.flatMap((g) => g.n);
  const allNorm = groups.flatMap((g) => g.norm);
  const [rx0, rx1] = xRange();
  const [ry0, ry1] = yRange();
  const xs = new Scale(Math.min(...allN) / 1.2, Math.max(...allN) * 1.2, rx0, rx1, true);
  const ys = new Scale(Math.min(...allNorm) / 1.5, Math.max(...allNorm) * 1.5, ry0, ry1, true);

  const svg = new Svg();
  svg.axes(xs, ys, "N", "second-iterate norm");

  groups.forEach((g, gi) => {
    const color = seriesColor(gi);
    // presentation fit in log-log space, guarded against the slope column
    const fit = leastSquares(g.n.map(Math.log), g.norm.map(Math.log));
    if (Math.abs(fit.slope - g.slope) > 1e-6) {
      throw new CsvError(
        `fit slope ${fit.slope} disagrees with slope column ${g.slope} for s = ${g.s}`
      );
    }
    const lineY = (nv: number) => Math.exp(fit.intercept + fit.slope * Math.log(nv));
    const nLo = Math.min(...g.n);
    const nHi = Math.max(...g.n);
    svg.raw(
      `<polyline points="${fmt(xs.pos(nLo))},${fmt(ys.pos(lineY(nLo)))} ${fmt(xs.pos(nHi))},${fmt(
        ys.pos(lineY(nHi))
      )}" fill="none" stroke="${color}" stroke-width="1.5" class="fit-line" data-slope="${g.slope}"/>`
    );
    // reference growth law N^(-s - 1/2 - eps), anchored at the first point
    const refSlope = -g.s - 0.5 - g.eps;
    const refY = (nv: number) => g.norm[0] * Math.pow(nv / g.n[0], refSlope);
    svg.raw(
      `<polyline points="${fmt(xs.pos(nLo))},${fmt(ys.pos(refY(nLo)))} ${fmt(xs.pos(nHi))},${fmt(
        ys.pos(refY(nHi))
      )}" fill="none" stroke="${color}" stroke-width="1" stroke-dasharray="6 4" class="reference-line" data-ref-slope="${refSlope}"/>`
    );
    for (let i = 0; i < g.n.length; i++) {
      svg.circle(xs.pos(g.n[i]), ys.pos(g.norm[i]), 3.5, `fill="${color}" class="scatter"`);
    }
    const lx = rx1 - 210;
    const ly = M.top + 18 * gi + 8;
    svg.line(lx, ly - 4, lx + 22, ly - 4, `stroke="${color}" stroke-width="2" class="legend"`);
    svg.text(lx + 28, ly, `s = ${g.s}: slope ${g.slope.toFixed(4)} (ref ${refSlope.toFixed(4)})`, 'font-size="11"');
  });

  return svg.render("norm growth along the data family (log-log)");
}

export function renderNormSeries(csvPath: string): string {
  const table = readTable(csvPath, (sc) => sc === "simulate");
  const t = numberColumn(table, "t");
  const l2 = numberColumn(table, "l2");
  const hs = numberColumn(table, "h_s1_s2");
  const resid = numberColumn(table, "energy_residual");

  const [rx0, rx1] = xRange();
  const midGap = 30;
  const panelTop: [number, number] = [Math.round((HEIGHT - M.bottom + M.top) / 2) - midGap / 2, M.top];
  const panelBot: [number, number] = [HEIGHT - M.bottom, Math.round((HEIGHT - M.bottom + M.top) / 2) + midGap / 2];

  const xsT = new Scale(t[0], t[t.length - 1], rx0, rx1);
  const normVals = [...l2, ...hs].filter(Number.isFinite);
  const ysN = new Scale(0, Math.max(...normVals) * 1.1, panelTop[0], panelTop[1]);

  const positive = resid.filter((v) => Number.isFinite(v) && v > 0);
  const residLo = Math.min(1e-8, ...(positive.length ? [Math.min(...positive) / 2] : []));
  const residHi = Math.max(1e-5, ...(positive.length ? [Math.max(...positive) * 2] : []));
  const ysR = new Scale(residLo, residHi, panelBot[0], panelBot[1], true);

  const svg = new Svg();
  svg.axes(xsT, ysN, "", "norms");
  svg.polyline(t.map((tv, i) => [xsT.pos(tv), ysN.pos(l2[i])] as [number, number]), `stroke="${seriesColor(0)}" stroke-width="1.5" class="series-l2"`);
  svg.polyline(t.map((tv, i) => [xsT.pos(tv), ysN.pos(hs[i])] as [number, number]), `stroke="${seriesColor(1)}" stroke-width="1.5" class="series-hs"`);
  svg.line(rx1 - 180, M.top + 4, rx1 - 158, M.top + 4, `stroke="${seriesColor(0)}" stroke-width="2"`);
  svg.text(rx1 - 152, M.top + 8, "L2", 'font-size="11"');
  svg.line(rx1 - 180, M.top + 22, rx1 - 158, M.top + 22, `stroke="${seriesColor(1)}" stroke-width="2"`);
  svg.text(rx1 - 152, M.top + 26, "H^{s1,s2}", 'font-size="11"');

  svg.axes(xsT, ysR, "t", "energy residual");
  const pts: Array<[number, number]> = [];
  for (let i = 0; i < t.length; i++) {
    if (Number.isFinite(resid[i]) && resid[i] > 0) {
      pts.push([xsT.pos(t[i]), ysR.pos(resid[i])]);
    }
  }
  if (pts.length > 0) {
    svg.polyline(pts, `stroke="${seriesColor(2)}" stroke-width="1.5" class="series-residual"`);
  }
  const critY = ysR.pos(1e-6);
  svg.raw(
    `<line x1="${fmt(rx0)}" y1="${fmt(critY)}" x2="${fmt(rx1)}" y2="${fmt(critY)}" stroke="#888" stroke-width="1" stroke-dasharray="4 4" class="criterion-line" data-level="1e-06"/>`
  );
  svg.text(rx1 - 4, critY - 4, "1e-6 criterion", 'text-anchor="end" font-size="10" fill="#888"');

  return svg.render("norm time series and energy-balance residual");
}

export function renderRatioHist(csvPath: string): string {
  const table = readTable(csvPath, (sc) => sc.startsWith("probe-"));
  stringColumn(table, "label"); // presence check
  const ratios = numberColumn(table, "ratio").filter(Number.isFinite);
  if (ratios.length === 0) {
    throw new CsvError(`${csvPath}: no finite ratios to bin`);
  }
  const lo = Math.min(...ratios);
  const hi = Math.max(...ratios);
  const span = hi > lo ? hi - lo : Math.max(Math.abs(hi), 1) * 0.1;
  const bins = 24;
  const counts = new Array<number>(bins).fill(0);
  for (const r of ratios) {
    const idx = Math.min(bins - 1, Math.max(0, Math.floor(((r - lo) / span) * bins)));
    counts[idx] += 1;
  }

  const [rx0, rx1] = xRange();
  const [ry0, ry1] = yRange();
  const xs = new Scale(lo, lo + span, rx0, rx1);
  const ys = new Scale(0, Math.max(...counts) * 1.15, ry0, ry1);
  const svg = new Svg();
  svg.axes(xs, ys, `ratio (${table.schema})`, "count");
  const w = (rx1 - rx0) / bins;
  for (let i = 0; i < bins; i++) {
    if (counts[i] === 0) continue;
    const x = rx0 + i * w;
    const y = ys.pos(counts[i]);
    svg.rect(x + 0.5, y, w - 1, ry0 - y, `fill="${seriesColor(0)}" fill-opacity="0.8" class="bar"`);
  }
  svg.text(rx1 - 4, M.top + 8, `n = ${ratios.length}`, 'text-anchor="end" font-size="11"');
  return svg.render("estimate-ratio histogram");
}
