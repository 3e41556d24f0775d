const nums = [1, 2, 3];
let total = 0;
for (const n of nums) {
  total += n;
}
console.log(total);
