import init, { Demo } from "./pkg/lacas_web.js";

const $ = (id) => document.getElementById(id);
let demo = null;

function show(svg, text) {
  $("canvas").innerHTML = svg;
  if (text !== undefined) $("info").textContent = text;
}

function guard(action) {
  try {
    action();
  } catch (e) {
    $("info").textContent = String(e);
  }
}

function generate() {
  guard(() => {
    demo?.free();
    demo = new Demo($("family").value, BigInt($("seed").value || 0), Number($("locations").value || 0));
    show(demo.svg(), `${demo.locations} locations, ${demo.obstacles} obstacle segments`);
  });
}

function solve() {
  guard(() => {
    const r = JSON.parse(demo.solve($("algo").value, Number($("timeout").value)));
    const lines = [
      `${r.algorithm}: ${r.outcome}`,
      r.cost === null ? "no path" : `cost ${r.cost.toFixed(4)}${r.proven_optimal ? " (proven optimal)" : ""}`,
      `${r.iterations} iterations, ${r.connect_calls} connect calls, ${r.elapsed_ms.toFixed(1)} ms`,
      ...r.improvements.map(([t, c]) => `  ${t.toFixed(2)} ms -> ${c.toFixed(4)}`),
    ];
    show(r.svg, lines.join("\n"));
  });
}

function step() {
  const n = Number($("iterations").value);
  $("iter-value").textContent = n;
  guard(() => show(demo.explore($("algo").value, n)));
}

await init();
for (const f of Demo.families()) $("family").add(new Option(f, f));
$("family").value = "trap";
$("generate").onclick = generate;
$("solve").onclick = solve;
$("iterations").oninput = step;
generate();
