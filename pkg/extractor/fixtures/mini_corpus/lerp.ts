export const lerp = (a: number, b: number, t: number): number => a + (b - a) * t;
