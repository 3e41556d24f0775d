export class Queue<T> {
  private items: T[] = [];

  enqueue(item: T): number {
    return this.items.push(item);
  }

  dequeue(): T | undefined {
    return this.items.reverse().pop();
  }
}
