export function merge(base: Record<string, number>, extra: Record<string, number>): Record<string, number> {
  return Object.assign({}, base, extra);
}
