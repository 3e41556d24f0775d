export class Counter {
  private n = 0;

  increment(): number {
    this.n = this.n + 1;
    return this.n;
  }

  reset(): void {
    this.n = 0;
  }
}
