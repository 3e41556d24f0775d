export function parseCsvLine(line: string): string[] {
  return line.split(",").map((cell) => cell.trim());
}

export function renderCsvLine(cells: string[]): string {
  return cells.join(",");
}
