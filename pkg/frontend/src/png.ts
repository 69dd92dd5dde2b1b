/** Minimal deterministic rasterizer and PNG encoder (RGBA, no ancillary chunks).
 *
 * The raster output is a preview: curves, axes, ticks, and numeric labels.
 * Non-numeric glyphs are skipped; the SVG is the full-fidelity figure.
 */

import { deflateSync } from "node:zlib";
import type { Element, Scene } from "./scene.js";

const FONT: Record<string, number[]> = {
  "0": [0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110],
  "1": [0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110],
  "2": [0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111],
  "3": [0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110],
  "4": [0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010],
  "5": [0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110],
  "6": [0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110],
  "7": [0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000],
  "8": [0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110],
  "9": [0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100],
  ".": [0, 0, 0, 0, 0, 0b01100, 0b01100],
  "-": [0, 0, 0, 0b11110, 0, 0, 0],
  "+": [0, 0b00100, 0b00100, 0b11111, 0b00100, 0b00100, 0],
  e: [0, 0, 0b01110, 0b10001, 0b11111, 0b10000, 0b01110],
};

function parseColor(c: string): [number, number, number] {
  const hex = c.startsWith("#") ? c.slice(1) : "000000";
  return [
    parseInt(hex.slice(0, 2), 16),
    parseInt(hex.slice(2, 4), 16),
    parseInt(hex.slice(4, 6), 16),
  ];
}

class Raster {
  readonly data: Uint8Array;
  constructor(readonly width: number, readonly height: number) {
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const k = (yi * this.width + xi) * 4;
    this.data[k] = rgb[0];
    this.data[k + 1] = rgb[1];
    this.data[k + 2] = rgb[2];
    this.data[k + 3] = 255;
  }

  disc(x: number, y: number, r: number, rgb: [number, number, number]): void {
    if (r <= 0.6) {
      this.set(x, y, rgb);
      return;
    }
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        if (dx * dx + dy * dy <= r * r) this.set(x + dx, y + dy, rgb);
      }
    }
  }

  line(x1: number, y1: number, x2: number, y2: number, width: number, rgb: [number, number, number], dashed = false): void {
    const len = Math.hypot(x2 - x1, y2 - y1);
    const steps = Math.max(1, Math.ceil(len));
    const r = Math.max(0, (width - 1) / 2);
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      if (dashed && Math.floor((t * len) / 4) % 2 === 1) continue;
      this.disc(x1 + t * (x2 - x1), y1 + t * (y2 - y1), r, rgb);
    }
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    for (let yy = y; yy < y + h; yy++) {
      for (let xx = x; xx < x + w; xx++) this.set(xx, yy, rgb);
    }
  }

  text(x: number, y: number, s: string, anchor: "start" | "middle" | "end", rgb: [number, number, number]): void {
    const w = s.length * 6;
    let x0 = x;
    if (anchor === "middle") x0 = x - w / 2;
    if (anchor === "end") x0 = x - w;
    const y0 = y - 7; // baseline at y
    for (const ch of s) {
      const glyph = FONT[ch];
      if (glyph) {
        for (let row = 0; row < 7; row++) {
          for (let col = 0; col < 5; col++) {
            if ((glyph[row] >> (4 - col)) & 1) this.set(x0 + col, y0 + row, rgb);
          }
        }
      }
      x0 += 6;
    }
  }
}

function rasterize(scene: Scene): Raster {
  const r = new Raster(scene.width, scene.height);
  for (const el of scene.elements) {
    switch (el.kind) {
      case "rect":
        r.fillRect(el.x, el.y, el.w, el.h, parseColor(el.fill));
        break;
      case "line":
        r.line(el.x1, el.y1, el.x2, el.y2, el.width, parseColor(el.color), el.dashed ?? false);
        break;
      case "polyline": {
        const rgb = parseColor(el.color);
        for (let i = 1; i < el.points.length; i++) {
          const [xa, ya] = el.points[i - 1];
          const [xb, yb] = el.points[i];
          r.line(xa, ya, xb, yb, el.width, rgb);
        }
        break;
      }
      case "text":
        r.text(el.x, el.y, el.text, el.anchor, parseColor(el.color));
        break;
    }
  }
  return r;
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const b of buf) c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(data.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([Buffer.from(type, "ascii"), Buffer.from(data)]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head, Buffer.from(data), tail]);
}

export function sceneToPng(scene: Scene): Buffer {
  const raster = rasterize(scene);
  const { width, height, data } = raster;

  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  ihdr[10] = 0;
  ihdr[11] = 0;
  ihdr[12] = 0;

  const stride = width * 4;
  const filtered = Buffer.alloc((stride + 1) * height);
  for (let y = 0; y < height; y++) {
    filtered[y * (stride + 1)] = 0; // filter type: none
    filtered.set(data.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }

  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(filtered, { level: 9 })),
    chunk("IEND", new Uint8Array(0)),
  ]);
}
