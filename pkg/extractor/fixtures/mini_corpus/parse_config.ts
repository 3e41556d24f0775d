export function parseConfig(raw: string): Record<string, unknown> {
  const data = JSON.parse(raw);
  return data;
}

export function dumpConfig(cfg: Record<string, unknown>): string {
  return JSON.stringify(cfg);
}
