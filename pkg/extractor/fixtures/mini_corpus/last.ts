export function last<T>(items: T[]): T {
  return items[items.length - 1];
}
