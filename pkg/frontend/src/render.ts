// DOM/SVG rendering.  Everything displayed is a server payload string; the
// renderer only arranges them on the fixed ladder grid.

import { arrowsFromMatrix, layoutSize, vertexPosition } from "./quiver.js";
import {
  ViewState,
  denominatorText,
  exchangeLine,
  labelText,
} from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Handlers {
  onVertexClick: (index: number) => void;
}

export function renderAll(view: ViewState, handlers: Handlers): void {
  renderQuiver(view, handlers);
  renderExchange(view);
  renderHistory(view);
  renderDetail(view);
  renderBanner(view);
}

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function renderQuiver(view: ViewState, handlers: Handlers): void {
  const host = el("quiver");
  host.textContent = "";
  if (!view.seed) return;
  const { grid, seed } = view.seed;
  const size = layoutSize(grid);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(size.x));
  svg.setAttribute("height", String(size.y));

  const defs = document.createElementNS(SVG_NS, "defs");
  defs.innerHTML =
    '<marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" ' +
    'refY="3" orient="auto"><path d="M0,0 L7,3 L0,6 z"/></marker>';
  svg.appendChild(defs);

  for (const arrow of arrowsFromMatrix(seed.matrix)) {
    const a = vertexPosition(grid[arrow.from]);
    const b = vertexPosition(grid[arrow.to]);
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const pad = 26;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x + (dx / len) * pad));
    line.setAttribute("y1", String(a.y + (dy / len) * pad));
    line.setAttribute("x2", String(b.x - (dx / len) * pad));
    line.setAttribute("y2", String(b.y - (dy / len) * pad));
    line.setAttribute("class", "arrow");
    line.setAttribute("marker-end", "url(#arrowhead)");
    if (arrow.mult > 1) {
      line.setAttribute("stroke-width", String(1 + arrow.mult));
    }
    svg.appendChild(line);
  }

  grid.forEach((vertex, index) => {
    const p = vertexPosition(vertex);
    const frozen = index >= seed.matrix[0].length;
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", frozen ? "vertex frozen" : "vertex mutable");
    if (index === view.selected) {
      group.classList.add("selected");
    }
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", "22");
    group.appendChild(circle);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(p.x));
    text.setAttribute("y", String(p.y + 5));
    text.setAttribute("text-anchor", "middle");
    text.textContent = `${vertex.i},${vertex.k}`;
    group.appendChild(text);
    group.addEventListener("click", () => handlers.onVertexClick(index));
    svg.appendChild(group);
  });
  host.appendChild(svg);
}

export function renderExchange(view: ViewState): void {
  el("exchange").textContent = exchangeLine(view);
}

export function renderHistory(view: ViewState): void {
  const host = el("history");
  host.textContent = "";
  for (const line of view.historyPanel) {
    const item = document.createElement("li");
    item.textContent = line;
    host.appendChild(item);
  }
  el("history-count").textContent = view.seed
    ? `${view.seed.history.length} mutations`
    : "";
}

export function renderDetail(view: ViewState): void {
  const host = el("detail");
  host.textContent = "";
  const d = view.detail;
  if (!d) return;

  const add = (label: string, value: string) => {
    const row = document.createElement("div");
    row.className = "detail-row";
    const name = document.createElement("span");
    name.className = "detail-label";
    name.textContent = label;
    const val = document.createElement("code");
    val.textContent = value;
    row.append(name, val);
    host.appendChild(row);
  };

  add("expansion", d.expansion);
  if (d.frozen) {
    add("status", "frozen");
    if (d.kr_label) add("KR label", d.kr_label);
  } else {
    add("denominator", denominatorText(view, d.index));
    add("root label", d.label ? JSON.stringify(d.label) : labelText(view, d.index));
    if (d.g_vector) add("g-vector", JSON.stringify(d.g_vector));
    if (d.f_polynomial) {
      add(
        "F-polynomial",
        d.f_polynomial
          .map((t) => {
            const mono = t.exponents
              .map((e, j) => (e ? (e === 1 ? `v${j + 1}` : `v${j + 1}^${e}`) : ""))
              .filter(Boolean)
              .join("*");
            return mono ? (t.coeff === 1 ? mono : `${t.coeff}*${mono}`) : String(t.coeff);
          })
          .join(" + "),
      );
    }
    if (d.character) {
      add("truncated character", d.character.polynomial);
      add("monomials", String(d.character.terms));
    }
  }
}

export function renderBanner(view: ViewState): void {
  const host = el("banner");
  host.textContent = view.banner ?? "";
  host.className = view.banner ? "banner visible" : "banner";
}
