const levels = ["debug", "info", "warn", "error"];

export function levelAtLeast(level: string, floor: string): boolean {
  return levels.indexOf(level) >= levels.indexOf(floor);
}
