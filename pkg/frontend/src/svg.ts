/**
 * Minimal deterministic SVG scene builder.
 *
 * Coordinates are formatted with fixed precision and elements are emitted
 * in insertion order, so identical inputs produce byte-identical files.
 */

export const WIDTH = 720;
export const HEIGHT = 480;

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export interface Margin {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export class Scale {
  constructor(
    readonly lo: number,
    readonly hi: number,
    readonly rangeLo: number,
    readonly rangeHi: number,
    readonly log: boolean = false
  ) {}

  pos(v: number): number {
    const a = this.log ? Math.log10(this.lo) : this.lo;
    const b = this.log ? Math.log10(this.hi) : this.hi;
    const x = this.log ? Math.log10(v) : v;
    const t = b === a ? 0.5 : (x - a) / (b - a);
    return this.rangeLo + t * (this.rangeHi - this.rangeLo);
  }

  ticks(count = 5): number[] {
    if (this.log) {
      const lo = Math.ceil(Math.log10(this.lo) - 1e-9);
      const hi = Math.floor(Math.log10(this.hi) + 1e-9);
      const out: number[] = [];
      const step = Math.max(1, Math.floor((hi - lo) / count));
      for (let e = lo; e <= hi; e += step) out.push(Math.pow(10, e));
      return out.length >= 2 ? out : [this.lo, this.hi];
    }
    const span = this.hi - this.lo;
    if (span <= 0) return [this.lo];
    const raw = span / count;
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count + 1) ?? mag * 10;
    const first = Math.ceil(this.lo / step) * step;
    const out: number[] = [];
    for (let v = first; v <= this.hi + 1e-12 * span; v += step) out.push(v);
    return out;
  }
}

function tickLabel(v: number, log: boolean): string {
  if (log) {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  }
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

export class Svg {
  private parts: string[] = [];

  rect(x: number, y: number, w: number, h: number, attrs: string): void {
    this.parts.push(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ${attrs}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`
    );
  }

  polyline(points: Array<[number, number]>, attrs: string): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${pts}" fill="none" ${attrs}/>`);
  }

  circle(cx: number, cy: number, r: number, attrs: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${attrs}/>`);
  }

  text(x: number, y: number, content: string, attrs = ""): void {
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${attrs}>${escapeXml(content)}</text>`);
  }

  raw(markup: string): void {
    this.parts.push(markup);
  }

  axes(xs: Scale, ys: Scale, xLabel: string, yLabel: string): void {
    const x0 = xs.rangeLo;
    const x1 = xs.rangeHi;
    const y0 = ys.rangeLo; // bottom (larger svg y)
    const y1 = ys.rangeHi;
    this.line(x0, y0, x1, y0, 'stroke="#333" stroke-width="1"');
    this.line(x0, y0, x0, y1, 'stroke="#333" stroke-width="1"');
    for (const t of xs.ticks()) {
      const px = xs.pos(t);
      this.line(px, y0, px, y0 + 5, 'stroke="#333" stroke-width="1"');
      this.text(px, y0 + 18, tickLabel(t, xs.log), 'text-anchor="middle" font-size="11"');
    }
    for (const t of ys.ticks()) {
      const py = ys.pos(t);
      this.line(x0 - 5, py, x0, py, 'stroke="#333" stroke-width="1"');
      this.text(x0 - 8, py + 4, tickLabel(t, ys.log), 'text-anchor="end" font-size="11"');
    }
    this.text((x0 + x1) / 2, y0 + 36, xLabel, 'text-anchor="middle" font-size="12"');
    this.text(14, (y0 + y1) / 2, yLabel, `text-anchor="middle" font-size="12" transform="rotate(-90 14 ${fmt((y0 + y1) / 2)})"`);
  }

  render(title: string): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
      `<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-size="15">${escapeXml(title)}</text>`,
      ...this.parts,
      `</svg>`,
      ``,
    ].join("\n");
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
