export function countTrue(flags: boolean[]): number {
  return flags.filter((f) => f).length;
}
