/** Readers for the lab's two CSV schemas, with column-level validation. */

import { readFileSync } from "node:fs";

export const TRAJECTORY_COLUMNS = ["t", "fidelity", "leakage", "norm_drift"] as const;
export const SWEEP_COLUMNS = ["param", "value", "fidelity_at_T"] as const;

export class SchemaError extends Error {
  readonly column: string;
  constructor(path: string, column: string, detail: string) {
    super(`${path}: column "${column}" ${detail}`);
    this.column = column;
  }
}

export interface TrajectoryData {
  t: number[];
  fidelity: number[];
  leakage: number[];
  normDrift: number[];
}

export interface SweepData {
  param: string;
  value: number[];
  fidelity: number[];
}

function splitRows(path: string, text: string): string[][] {
  const rows = text
    .split(/\r?\n/)
    .filter((line) => line.length > 0)
    .map((line) => line.split(","));
  if (rows.length === 0) {
    throw new SchemaError(path, "(header)", "is missing: file is empty");
  }
  return rows;
}

function checkHeader(path: string, header: string[], expected: readonly string[]): void {
  for (let i = 0; i < expected.length; i++) {
    if (header[i] !== expected[i]) {
      throw new SchemaError(path, expected[i], `expected at position ${i + 1}, found "${header[i] ?? ""}"`);
    }
  }
  if (header.length !== expected.length) {
    throw new SchemaError(path, header[expected.length], "is not part of the schema");
  }
}

function parseNumber(path: string, column: string, raw: string | undefined, row: number): number {
  if (raw === undefined || raw.length === 0) {
    throw new SchemaError(path, column, `is missing a value at data row ${row}`);
  }
  const x = Number(raw);
  if (!Number.isFinite(x)) {
    throw new SchemaError(path, column, `has non-numeric value "${raw}" at data row ${row}`);
  }
  return x;
}

export function readTrajectoryCsv(path: string): TrajectoryData {
  const rows = splitRows(path, readFileSync(path, "utf8"));
  checkHeader(path, rows[0], TRAJECTORY_COLUMNS);
  const body = rows.slice(1);
  if (body.length === 0) {
    throw new SchemaError(path, "t", "has no data rows");
  }
  const data: TrajectoryData = { t: [], fidelity: [], leakage: [], normDrift: [] };
  body.forEach((cells, i) => {
    data.t.push(parseNumber(path, "t", cells[0], i + 1));
    data.fidelity.push(parseNumber(path, "fidelity", cells[1], i + 1));
    data.leakage.push(parseNumber(path, "leakage", cells[2], i + 1));
    data.normDrift.push(parseNumber(path, "norm_drift", cells[3], i + 1));
  });
  return data;
}

export function readSweepCsv(path: string): SweepData {
  const rows = splitRows(path, readFileSync(path, "utf8"));
  checkHeader(path, rows[0], SWEEP_COLUMNS);
  const body = rows.slice(1);
  if (body.length === 0) {
    throw new SchemaError(path, "param", "has no data rows");
  }
  const data: SweepData = { param: body[0][0], value: [], fidelity: [] };
  body.forEach((cells, i) => {
    if (cells[0] !== data.param) {
      throw new SchemaError(path, "param", `changes from "${data.param}" to "${cells[0]}" at data row ${i + 1}`);
    }
    data.value.push(parseNumber(path, "value", cells[1], i + 1));
    data.fidelity.push(parseNumber(path, "fidelity_at_T", cells[2], i + 1));
  });
  return data;
}

export interface SidecarPulse {
  shape?: string;
  intensity?: number;
}

/** Pull the pulse family and intensity out of a run's metadata sidecar, if present. */
export function readSidecarPulse(csvPath: string): SidecarPulse {
  const metaPath = csvPath.replace(/\.csv$/, ".meta.json");
  let text: string;
  try {
    text = readFileSync(metaPath, "utf8");
  } catch {
    return {};
  }
  try {
    const doc = JSON.parse(text);
    const pulse = doc?.params?.base?.pulse ?? doc?.params?.pulse;
    if (pulse && typeof pulse === "object") {
      return { shape: pulse.shape, intensity: pulse.intensity ?? pulse.base_intensity };
    }
  } catch {
    // fall through: a malformed sidecar just means no marker hints
  }
  return {};
}
