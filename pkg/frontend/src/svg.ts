/** Serialize a scene to standalone SVG; output depends only on the scene. */

import type { Element, Scene } from "./scene.js";

function num(v: number): string {
  return Number(v.toFixed(2)).toString();
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function render(el: Element): string {
  switch (el.kind) {
    case "rect":
      return `<rect x="${num(el.x)}" y="${num(el.y)}" width="${num(el.w)}" height="${num(el.h)}" fill="${el.fill}"/>`;
    case "line": {
      const dash = el.dashed ? ' stroke-dasharray="4 3"' : "";
      return `<line x1="${num(el.x1)}" y1="${num(el.y1)}" x2="${num(el.x2)}" y2="${num(el.y2)}" stroke="${el.color}" stroke-width="${num(el.width)}"${dash}/>`;
    }
    case "polyline": {
      const pts = el.points.map(([x, y]) => `${num(x)},${num(y)}`).join(" ");
      return `<polyline points="${pts}" fill="none" stroke="${el.color}" stroke-width="${num(el.width)}"/>`;
    }
    case "text": {
      const anchor = el.anchor === "start" ? "" : ` text-anchor="${el.anchor}"`;
      return `<text x="${num(el.x)}" y="${num(el.y)}" font-family="sans-serif" font-size="${num(el.size)}" fill="${el.color}"${anchor}>${esc(el.text)}</text>`;
    }
  }
}

export function sceneToSvg(scene: Scene): string {
  const body = scene.elements.map(render).join("\n  ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" ` +
    `viewBox="0 0 ${scene.width} ${scene.height}">\n  ${body}\n</svg>\n`
  );
}
