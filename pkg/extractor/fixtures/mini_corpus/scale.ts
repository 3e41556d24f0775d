export function scaleAll(values: number[], factor: number): number[] {
  return values.map((v) => v * factor);
}
