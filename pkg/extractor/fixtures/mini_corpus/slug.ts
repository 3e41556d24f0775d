export const slugify = (title: string): string =>
  title.trim().toLowerCase().split(" ").join("-");
