import { average } from "./average";

const readings = [12, 15, 9, 22];
const mean = average(readings);
if (mean > 10) {
  console.log("above threshold: " + String(mean));
}
