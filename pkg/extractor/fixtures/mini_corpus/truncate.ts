export function truncate(text: string, width: number): string {
  if (text.length <= width) {
    return text;
  }
  return text.substring(0, width - 3) + "...";
}
