export const isEven = (n: number): boolean => n % 2 === 0;

export const isOdd = (n: number): boolean => !isEven(n);
