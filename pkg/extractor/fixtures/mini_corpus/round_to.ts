export function roundTo(value: number, places: number): number {
  const scale = Math.pow(10, places);
  return Math.round(value * scale) / scale;
}
