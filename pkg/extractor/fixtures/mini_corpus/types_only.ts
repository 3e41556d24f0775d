export interface Point {
  x: number;
  y: number;
}

export type Pair = [Point, Point];
