export function addOne(x: number): number {
  return x + 1;
}

export function triple(x: number): number {
  return x * 3;
}
