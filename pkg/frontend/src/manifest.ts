/**
 * Every tool output sits next to a `<stem>.manifest.json` with the fully
 * resolved parameters; the renderer uses it for panel labels and for the
 * model constants some figures need (e.g. the quadratic-killing shift).
 */

import { existsSync, readFileSync } from "fs";

export interface ModelBlock {
  beta: number;
  lambda: number;
  P: number;
  theta: number;
}

export interface Manifest {
  command: string;
  config_path: string;
  resolved_params: {
    model: ModelBlock;
    nondim: { alpha: number | null; mu2: number; p: number | null };
  };
  output_paths: string[];
  tool_version: string;
}

export function manifestPathFor(outputPath: string): string {
  return outputPath.replace(/\.[^./\\]+$/, "") + ".manifest.json";
}

export function loadManifest(outputPath: string): Manifest | null {
  const path = manifestPathFor(outputPath);
  if (!existsSync(path)) {
    return null;
  }
  return JSON.parse(readFileSync(path, "utf8")) as Manifest;
}

/** Shift between raw and quadratic-free state coordinates. */
export function stateShift(model: ModelBlock): number {
  return (2 * model.theta) / (3 * model.lambda);
}
