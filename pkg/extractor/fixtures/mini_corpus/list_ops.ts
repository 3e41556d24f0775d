export function firstWord(text: string): string {
  const parts = text.split(" ");
  return parts[0];
}
