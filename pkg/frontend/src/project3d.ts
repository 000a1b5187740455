/**
 * Oblique projection for surface and wireframe panels: data are normalized
 * to the unit cube, then mapped to screen with the depth axis drawn at a
 * fixed slant. Painter's order comes from the depth coordinate.
 */

export interface Box3 {
  x: [number, number];
  y: [number, number];
  z: [number, number];
}

export interface Projector {
  (x: number, y: number, z: number): [number, number];
  depth(x: number, y: number): number;
}

export function makeProjector(
  box: Box3,
  width: number,
  height: number,
  margin = 60,
): Projector {
  const nx = (v: number) => (v - box.x[0]) / (box.x[1] - box.x[0] || 1);
  const ny = (v: number) => (v - box.y[0]) / (box.y[1] - box.y[0] || 1);
  const nz = (v: number) => (v - box.z[0]) / (box.z[1] - box.z[0] || 1);

  // unit-cube corners under (u, v) = (x + 0.55 y, -z - 0.38 y) fit to canvas
  const slantX = 0.55;
  const slantY = 0.38;
  const uSpan = 1 + slantX;
  const vSpan = 1 + slantY;
  const sx = (width - 2 * margin) / uSpan;
  const sy = (height - 2 * margin) / vSpan;

  const project = ((x: number, y: number, z: number): [number, number] => {
    const u = nx(x) + slantX * ny(y);
    const v = nz(z) + slantY * ny(y);
    return [margin + u * sx, height - margin - v * sy];
  }) as Projector;
  project.depth = (x: number, y: number) => ny(y) - 0.25 * nx(x);
  return project;
}
