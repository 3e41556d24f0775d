export function pick(obj: Record<string, string>, wanted: string[]): Record<string, string> {
  const out: Record<string, string> = {};
  for (const key of Object.keys(obj)) {
    if (wanted.includes(key)) {
      out[key] = obj[key];
    }
  }
  return out;
}
