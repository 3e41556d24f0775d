export function toNumber(text: string): number {
  const value = parseFloat(text.trim());
  if (isNaN(value)) {
    return 0;
  }
  return value;
}
