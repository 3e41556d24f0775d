export function titleCase(sentence: string): string {
  const words = sentence.toLowerCase().split(" ");
  const fixed = words.map((w) => w.charAt(0).toUpperCase() + w.slice(1));
  return fixed.join(" ");
}
