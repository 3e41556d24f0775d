export function flattenOnce(grid: number[][]): number[] {
  return grid.flat();
}
