#!/usr/bin/env node
/** `render --manifest PATH`: turn simulator outputs into figure panels. */

import { renderManifestFile } from "./render.js";

function main(argv: string[]): number {
  const idx = argv.indexOf("--manifest");
  if (idx < 0 || idx + 1 >= argv.length) {
    console.error("usage: render --manifest PATH");
    return 2;
  }
  try {
    const result = renderManifestFile(argv[idx + 1]);
    if (result.failures.length > 0) {
      console.error(`${result.failures.length} panel(s) failed`);
      return 1;
    }
    console.log(`${result.rendered.length} panel(s) rendered`);
    return 0;
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
}

process.exit(main(process.argv.slice(2)));
