export function numericDiff(before: number[], after: number[]): number[] {
  return after.map((value, i) => value - before[i]);
}
