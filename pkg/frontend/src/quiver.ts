// Pure geometry: exchange-matrix -> arrow list, and grid positions for the
// ladder layout (vertices (i, k), frozen column last).  No DOM here.

import { GridVertex } from "./types.js";

export interface Arrow {
  from: number;
  to: number;
  mult: number;
}

// The matrix is rows x columns with columns = mutable vertices.  A positive
// entry b[u][v] means `mult` arrows v -> u.  Mutable pairs appear twice
// (skew-symmetry), so only the lower-triangle entry is read for them.
export function arrowsFromMatrix(matrix: number[][]): Arrow[] {
  const arrows: Arrow[] = [];
  const cols = matrix.length ? matrix[0].length : 0;
  for (let u = 0; u < matrix.length; u++) {
    for (let v = 0; v < cols; v++) {
      if (u < cols && u <= v) continue;
      const b = matrix[u][v];
      if (b > 0) arrows.push({ from: v, to: u, mult: b });
      else if (b < 0) arrows.push({ from: u, to: v, mult: -b });
    }
  }
  arrows.sort((a, b) => a.from - b.from || a.to - b.to);
  return arrows;
}

export interface Point {
  x: number;
  y: number;
}

export const CELL = 110;
export const MARGIN = 70;

export function vertexPosition(vertex: GridVertex): Point {
  return {
    x: MARGIN + (vertex.k - 1) * CELL,
    y: MARGIN + (vertex.i - 1) * CELL,
  };
}

export function layoutSize(grid: GridVertex[]): Point {
  let maxI = 1;
  let maxK = 1;
  for (const v of grid) {
    maxI = Math.max(maxI, v.i);
    maxK = Math.max(maxK, v.k);
  }
  return {
    x: 2 * MARGIN + (maxK - 1) * CELL,
    y: 2 * MARGIN + (maxI - 1) * CELL,
  };
}
