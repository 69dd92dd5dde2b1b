/** Local-maximum detection matching the lab's peak finder. */

export interface Peak {
  x: number;
  y: number;
}

/**
 * Strict 3-point local maxima, plateaus resolved to their leftmost point,
 * single peaks refined by parabolic interpolation (clipped to the bracket).
 */
export function findPeaks(x: number[], y: number[]): Peak[] {
  if (x.length !== y.length) throw new Error("findPeaks needs matching arrays");
  if (x.length < 3) throw new Error("findPeaks needs at least 3 points");
  const peaks: Peak[] = [];
  const m = x.length;
  let i = 1;
  while (i < m - 1) {
    if (y[i] > y[i - 1]) {
      let j = i;
      while (j + 1 < m && y[j + 1] === y[i]) j++;
      if (j < m - 1 && y[j + 1] < y[i]) {
        if (j === i) {
          peaks.push(refine(x, y, i));
        } else {
          peaks.push({ x: x[i], y: y[i] }); // leftmost point of the plateau
        }
        i = j + 1;
        continue;
      }
    }
    i++;
  }
  return peaks;
}

function refine(x: number[], y: number[], i: number): Peak {
  const [x0, x1, x2] = [x[i - 1], x[i], x[i + 1]];
  const [y0, y1, y2] = [y[i - 1], y[i], y[i + 1]];
  // vertex of the quadratic through the three bracketing samples
  const denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  if (denom === 0) return { x: x1, y: y1 };
  const a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (a >= 0) return { x: x1, y: y1 };
  let xv = -b / (2 * a);
  xv = Math.min(Math.max(xv, x0), x2);
  const c = y1 - a * x1 * x1 - b * x1;
  return { x: xv, y: a * xv * xv + b * xv + c };
}
