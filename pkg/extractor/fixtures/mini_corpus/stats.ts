export function variance(xs: number[]): number {
  const mean = xs.reduce((a, b) => a + b, 0) / xs.length;
  const sq = xs.map((x) => (x - mean) * (x - mean));
  return sq.reduce((a, b) => a + b, 0) / xs.length;
}
