/** Ordinary least squares y = a + b x through centered sums. */

export function leastSquares(xs: number[], ys: number[]): { slope: number; intercept: number } {
  const n = xs.length;
  if (n < 2) throw new Error("least squares needs at least 2 points");
  const mx = xs.reduce((s, v) => s + v, 0) / n;
  const my = ys.reduce((s, v) => s + v, 0) / n;
  let sxy = 0;
  let sxx = 0;
  for (let i = 0; i < n; i++) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx === 0) throw new Error("least squares: degenerate abscissae");
  const slope = sxy / sxx;
  return { slope, intercept: my - slope * mx };
}
