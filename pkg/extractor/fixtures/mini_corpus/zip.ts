export function zip<A, B>(left: A[], right: B[]): Array<[A, B]> {
  const n = Math.min(left.length, right.length);
  const out: Array<[A, B]> = [];
  for (let i = 0; i < n; i++) {
    out.push([left[i], right[i]]);
  }
  return out;
}
