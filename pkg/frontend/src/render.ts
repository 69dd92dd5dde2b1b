/** Turn trajectory/sweep CSVs into one figure, written as both SVG and PNG. */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import { readSidecarPulse, readSweepCsv, readTrajectoryCsv } from "./csv.js";
import { markersForShape, type Marker } from "./markers.js";
import { buildScene, type Series } from "./scene.js";
import { sceneToPng } from "./png.js";
import { sceneToSvg } from "./svg.js";

export interface PlotJob {
  kind: "trajectory" | "sweep";
  inputs: string[];
  output: string;
  labels?: string[];
  title?: string;
  /** Plot raw time instead of t/T on trajectory figures. */
  rawTime?: boolean;
  /** Marker overrides when a sweep CSV has no metadata sidecar. */
  intensity?: number;
  shape?: string;
}

export interface RenderResult {
  svgPath: string;
  pngPath: string;
}

function defaultLabel(path: string): string {
  return basename(path).replace(/\.csv$/, "");
}

function outputBase(path: string): string {
  return path.replace(/\.(svg|png)$/i, "");
}

export function renderJob(job: PlotJob): RenderResult {
  if (job.inputs.length === 0) throw new Error("no input CSVs given");
  const labels = job.inputs.map((p, i) => job.labels?.[i] ?? defaultLabel(p));

  let series: Series[];
  let xLabel: string;
  const markers: Marker[] = [];

  if (job.kind === "trajectory") {
    series = job.inputs.map((path, i) => {
      const data = readTrajectoryCsv(path);
      const tEnd = data.t[data.t.length - 1];
      const normalize = !job.rawTime && tEnd > 0;
      return {
        label: labels[i],
        x: normalize ? data.t.map((t) => t / tEnd) : data.t,
        y: data.fidelity,
      };
    });
    xLabel = job.rawTime ? "t" : "t/T";
  } else {
    let param = "value";
    series = job.inputs.map((path, i) => {
      const data = readSweepCsv(path);
      param = data.param;
      const lo = data.value[0];
      const hi = data.value[data.value.length - 1];
      const sidecar = readSidecarPulse(path);
      const shape = job.shape ?? sidecar.shape;
      const intensity = job.intensity ?? sidecar.intensity;
      if (intensity !== undefined && param === "tau") {
        markers.push(...markersForShape(shape, intensity, lo, hi));
      }
      return { label: labels[i], x: data.value, y: data.fidelity };
    });
    xLabel = param;
  }

  const scene = buildScene(series, {
    title: job.title,
    xLabel,
    yLabel: "fidelity",
    markers,
  });

  const base = outputBase(job.output);
  const svgPath = `${base}.svg`;
  const pngPath = `${base}.png`;
  writeFileSync(svgPath, sceneToSvg(scene));
  writeFileSync(pngPath, sceneToPng(scene));
  return { svgPath, pngPath };
}
