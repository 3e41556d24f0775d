export class Stopwatch {
  private ticks = 0;

  tick(): number {
    this.ticks++;
    return this.ticks;
  }

  get elapsed(): number {
    return this.ticks * 16;
  }
}
