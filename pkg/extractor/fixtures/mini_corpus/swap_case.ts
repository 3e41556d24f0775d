export function swapExt(filename: string, ext: string): string {
  const dot = filename.indexOf(".");
  if (dot < 0) {
    return filename + "." + ext;
  }
  return filename.substring(0, dot) + "." + ext;
}
