export function banner(text: string): string {
  const bar = "=".repeat(text.length);
  return bar + "\n" + text + "\n" + bar;
}
