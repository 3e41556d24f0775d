export function keyCount(obj: Record<string, unknown>): number {
  return Object.keys(obj).length;
}

export function hasValues(obj: Record<string, unknown>): boolean {
  return Object.values(obj).some((v) => v !== null);
}
