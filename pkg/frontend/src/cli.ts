#!/usr/bin/env node
/** aestplot: render lab CSVs as figures.
 *
 * Exit codes: 0 success, 2 schema/usage error, 4 file-system error.
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { SchemaError } from "./csv.js";
import { renderJob, type PlotJob } from "./render.js";

const USAGE =
  "usage: aestplot --kind trajectory|sweep --in <csv...> --out <img> " +
  "[--label <text>...] [--title <text>] [--raw-time] [--intensity <f>] [--shape rect|sine|both]";

export function main(argv: string[]): number {
  let values;
  let positionals: string[];
  try {
    ({ values, positionals } = parseArgs({
      args: argv,
      allowPositionals: true, // bare arguments after --in extend the input list
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        label: { type: "string", multiple: true },
        title: { type: "string" },
        "raw-time": { type: "boolean", default: false },
        intensity: { type: "string" },
        shape: { type: "string" },
      },
    }));
  } catch (err) {
    console.error(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }

  if (values.kind !== "trajectory" && values.kind !== "sweep") {
    console.error(`--kind must be "trajectory" or "sweep"\n${USAGE}`);
    return 2;
  }
  const inputs = [...(values.in ?? []), ...positionals];
  if (!inputs.length || !values.out) {
    console.error(`--in and --out are required\n${USAGE}`);
    return 2;
  }
  const job: PlotJob = {
    kind: values.kind,
    inputs,
    output: values.out,
    labels: values.label,
    title: values.title,
    rawTime: values["raw-time"],
    intensity: values.intensity !== undefined ? Number(values.intensity) : undefined,
    shape: values.shape,
  };
  if (job.intensity !== undefined && !(job.intensity > 0)) {
    console.error(`--intensity must be a positive number\n${USAGE}`);
    return 2;
  }

  try {
    const result = renderJob(job);
    console.log(`wrote ${result.svgPath}`);
    console.log(`wrote ${result.pngPath}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(String((err as Error).message));
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      console.error(String(err.message));
      return 4;
    }
    console.error(String((err as Error).message ?? err));
    return 2;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
