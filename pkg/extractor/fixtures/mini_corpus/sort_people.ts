interface Person {
  name: string;
  age: number;
}

export function byAge(people: Person[]): Person[] {
  return people.slice(0).sort((a, b) => a.age - b.age);
}
