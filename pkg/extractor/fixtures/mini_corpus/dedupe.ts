export function dedupe(items: string[]): string[] {
  const seen: string[] = [];
  for (const item of items) {
    if (!seen.includes(item)) {
      seen.push(item);
    }
  }
  return seen;
}
