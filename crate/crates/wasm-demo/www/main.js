import init, { trace, cubes_game, certify_pairs } from "./pkg/sortnet_wasm.js";

const $ = (id) => document.getElementById(id);
const palette = ["#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
  "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000", "#aaffc3"];

function guard(f) {
  return () => {
    $("status").textContent = "";
    try {
      f();
    } catch (e) {
      $("status").textContent = e.message ?? String(e);
    }
  };
}

function shade(v, max) {
  const t = max > 0 ? v / max : 0;
  return `hsl(210, 60%, ${92 - 45 * t}%)`;
}

function runTrace() {
  const view = JSON.parse(trace($("construction").value, Number($("trace-n").value), $("trace-input").value,
    BigInt($("trace-seed").value)));
  const max = Math.max(...view.arrays[0]);
  $("trace-info").textContent = `n = ${view.n}, depth ${view.layers.length}, arity ${view.arity}`;
  const grid = $("trace-grid");
  grid.replaceChildren();
  view.arrays.forEach((array, a) => {
    const col = document.createElement("div");
    col.className = "array";
    const owner = new Map();
    if (a < view.layers.length) view.layers[a].forEach((block, b) => block.forEach((c) => owner.set(c, b)));
    array.forEach((v, c) => {
      const cell = document.createElement("div");
      cell.className = "cell";
      cell.textContent = v;
      cell.style.background = shade(v, max);
      if (owner.size) cell.style.borderLeft = `4px solid ${palette[owner.get(c) % palette.length]}`;
      col.appendChild(cell);
    });
    grid.appendChild(col);
  });
}

let game = null;

function drawGame() {
  const removed = game.stacks.map(() => 0);
  for (let i = 0; i < game.shown; i++) removed[game.steps[i]] += 1;
  const box = $("cubes-stacks");
  box.replaceChildren();
  game.stacks.forEach((stack, s) => {
    const col = document.createElement("div");
    col.className = "stack";
    stack.forEach((color, h) => {
      const cube = document.createElement("div");
      cube.className = h >= stack.length - removed[s] ? "cube gone" : "cube";
      cube.style.background = palette[color % palette.length];
      cube.textContent = color;
      col.appendChild(cube);
    });
    box.appendChild(col);
  });
  const flags = $("cubes-flags");
  flags.replaceChildren();
  game.flags.forEach((f, i) => {
    const mark = document.createElement("span");
    const inBest = i >= game.best_start && i < game.best_start + game.best_run;
    mark.className = (f ? "on" : "off") + (inBest ? " best" : "") + (i === game.shown ? " best" : "");
    mark.title = `state ${i}`;
    flags.appendChild(mark);
  });
  $("cubes-info").textContent =
    `step ${game.shown} of ${game.steps.length}; best run ${game.best_run} (target ${game.target})`;
}

function runCubes() {
  game = JSON.parse(cubes_game($("cubes-text").value, Number($("cubes-n").value), BigInt($("cubes-seed").value)));
  game.shown = 0;
  drawGame();
}

function stepCubes() {
  if (!game) runCubes();
  else if (game.shown < game.steps.length) {
    game.shown += 1;
    drawGame();
  }
}

function runCertify() {
  const view = JSON.parse(certify_pairs(Number($("cert-n").value)));
  const flips = view.flips.map((f) => f + 1).join(", ");
  $("cert-info").textContent = `cube stacks ${JSON.stringify(view.stacks)}; flips ${flips}; ` +
    `last-layer arity ≥ ${view.bound} (at least ${view.target} required)`;
}

await init();
$("trace-run").onclick = guard(runTrace);
$("cubes-run").onclick = guard(runCubes);
$("cubes-step").onclick = guard(stepCubes);
$("cert-run").onclick = guard(runCertify);
guard(runTrace)();
