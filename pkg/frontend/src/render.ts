// Scene -> SVG. Purely mechanical: all visual decisions live in scene.ts.

import { NODE_RADIUS, type Scene } from "./scene.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, String(value));
  }
  return node;
}

export function renderScene(scene: Scene, host: HTMLElement): void {
  host.replaceChildren();
  const svg = el("svg", {
    viewBox: `0 0 ${scene.width} ${scene.height}`,
    width: scene.width,
    height: scene.height,
  });

  for (const line of scene.lines) {
    svg.appendChild(el("line", {
      ...line, stroke: "#9a9a9a", "stroke-width": 1.5,
    }));
  }

  for (const square of scene.squares) {
    const half = square.size / 2;
    svg.appendChild(el("rect", {
      x: square.x - half, y: square.y - half,
      width: square.size, height: square.size,
      fill: "#1c1c1c",
    }));
    if (square.doubleRing) {
      const pad = 4;
      svg.appendChild(el("rect", {
        x: square.x - half - pad, y: square.y - half - pad,
        width: square.size + 2 * pad, height: square.size + 2 * pad,
        fill: "none", stroke: "#1c1c1c", "stroke-width": 1.5,
      }));
    }
  }

  for (const circle of scene.circles) {
    if (circle.highlighted) {
      svg.appendChild(el("circle", {
        cx: circle.cx, cy: circle.cy, r: NODE_RADIUS + 7,
        fill: "none", stroke: "#e67e22", "stroke-width": 3,
      }));
    }
    svg.appendChild(el("circle", {
      cx: circle.cx, cy: circle.cy, r: NODE_RADIUS,
      fill: circle.fill, stroke: "#000", "stroke-width": 1.5,
    }));
    if (circle.doubleRing) {
      svg.appendChild(el("circle", {
        cx: circle.cx, cy: circle.cy, r: NODE_RADIUS + 4,
        fill: "none", stroke: "#000", "stroke-width": 1.5,
      }));
    }
    const text = el("text", {
      x: circle.cx, y: circle.cy,
      "text-anchor": "middle", "dominant-baseline": "central",
      fill: "#fff", "font-size": 13,
    });
    text.textContent = circle.label;
    svg.appendChild(text);
  }

  if (scene.hint !== null) {
    const text = el("text", {
      x: scene.width / 2, y: scene.height / 2,
      "text-anchor": "middle", fill: "#666", "font-size": 15,
    });
    text.textContent = scene.hint;
    svg.appendChild(text);
  }

  host.appendChild(svg);
}
