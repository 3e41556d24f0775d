export function longWords(text: string, minLen: number): string[] {
  return text.split(" ").filter((w) => w.length >= minLen);
}
