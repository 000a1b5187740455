/**
 * Figure dispatch: each figure id validates its input kinds and delegates
 * to the family renderer.
 */

import { classify, readCsv, SchemaError, Table } from "./csv";
import { renderContour } from "./figures/contour";
import { renderCusp } from "./figures/cusp";
import { renderSurface } from "./figures/surface";
import { renderWells } from "./figures/wells";

export const FIGURE_IDS = ["2.1", "2.2", "3.1", "3.2", "4.1", "4.2"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

function pick(tables: Table[], kind: string, figure: string): Table[] {
  return tables.filter((t) => classify(t) === kind);
}

export function renderFigure(figure: string, inputPaths: string[]): string {
  if (!(FIGURE_IDS as readonly string[]).includes(figure)) {
    throw new SchemaError(
      `unknown figure id '${figure}'; expected one of ${FIGURE_IDS.join(", ")}`,
    );
  }
  const tables = inputPaths.map(readCsv);

  switch (figure as FigureId) {
    case "2.1":
    case "3.2": {
      const wells = pick(tables, "potential", figure);
      if (wells.length !== 2) {
        throw new SchemaError(
          `figure ${figure} needs exactly two potential files (columns coord,V); ` +
            `got ${wells.length} of ${tables.length} inputs`,
        );
      }
      return renderWells(wells, figure === "2.1" ? "P" : "theta");
    }
    case "2.2":
    case "3.1": {
      const surfaces = pick(tables, "landscape", figure);
      if (surfaces.length !== 1) {
        throw new SchemaError(
          `figure ${figure} needs exactly one landscape file ` +
            `(columns coord,param,V,branch_flag); got ${surfaces.length}`,
        );
      }
      return renderSurface(
        surfaces[0],
        figure === "2.2" ? "freshwater forcing" : "temperature difference",
      );
    }
    case "4.1": {
      const grids = pick(tables, "grid", figure);
      const contours = pick(tables, "contour", figure);
      if (grids.length !== 1 || contours.length !== 1) {
        throw new SchemaError(
          "figure 4.1 needs one grid file (theta,P,delta) and one contour " +
            `file (theta,P); got ${grids.length} grid and ${contours.length} contour`,
        );
      }
      return renderContour(grids[0], contours[0]);
    }
    case "4.2": {
      const surfaces = pick(tables, "landscape", figure);
      const folds = pick(tables, "folds", figure);
      if (surfaces.length < 2) {
        throw new SchemaError(
          "figure 4.2 needs two or more landscape slices " +
            `(columns coord,param,V,branch_flag); got ${surfaces.length}`,
        );
      }
      return renderCusp(surfaces, folds.length > 0 ? folds[0] : null);
    }
  }
  throw new SchemaError(`unhandled figure id '${figure}'`);
}
