// Expects the wasm-bindgen output (`--target web`) in ./pkg.
import init, { classify, construction_limits, sparse_bound } from "./pkg/inducibility_wasm.js";

const $ = (id) => document.getElementById(id);

function plot(canvas, xs, series, yMax) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, 5, w - pad - 5, h - pad - 5);
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.fillText(yMax.toFixed(2), 2, 12);
  ctx.fillText("0", 18, h - pad);
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - pad - 5);
  const py = (y) => h - pad - (y / yMax) * (h - pad - 10);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash || []);
    ctx.beginPath();
    s.ys.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  }
  ctx.setLineDash([]);
}

function draw(canvas, info) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const n = info.n;
  const pos = [...Array(n).keys()].map((i) => [
    w / 2 + 0.4 * w * Math.cos((2 * Math.PI * i) / n - Math.PI / 2),
    h / 2 + 0.4 * h * Math.sin((2 * Math.PI * i) / n - Math.PI / 2),
  ]);
  ctx.strokeStyle = "#444";
  for (const [u, v] of info.edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  const obscure = new Set(info.classification.obscure);
  const detectable = new Set(info.classification.detectable);
  pos.forEach(([x, y], i) => {
    ctx.fillStyle = obscure.has(i) ? "#c33" : detectable.has(i) ? "#27a" : "#bbb";
    ctx.beginPath();
    ctx.arc(x, y, 9, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#fff";
    ctx.font = "11px sans-serif";
    ctx.fillText(String(i), x - 3.5, y + 4);
  });
}

function guarded(out, f) {
  try {
    out.classList.remove("err");
    f();
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("err");
  }
}

function runClassify() {
  const out = $("classify-out");
  guarded(out, () => {
    const info = JSON.parse(classify($("g6").value));
    draw($("drawing"), info);
    const { classification: c, taming, brightness } = info;
    out.textContent = [
      `n = ${info.n}, degrees ${info.degrees.join(" ")}`,
      `detectable (blue): ${c.detectable.join(", ") || "none"}`,
      `obscure (red): ${c.obscure.join(", ") || "none"}`,
      `taming number: ${taming ? taming.number + "  via {" + taming.v0.join(", ") + "}" : "too large"}`,
      `brightness: ${brightness ? brightness.value + " ~ " + brightness.approx.toFixed(6) : "n/a"}`,
      info.brightness_bounds ? `lower bounds: ${Object.entries(info.brightness_bounds).map(([k, v]) => k + " " + v).join(", ")}` : "",
    ].join("\n");
  });
}

function runLimits() {
  const out = $("limits-out");
  guarded(out, () => {
    const r = JSON.parse(construction_limits(Number($("k").value), 400));
    plot($("limits"), r.sigma, [
      { ys: r.r1, color: "#27a" },
      { ys: r.r2, color: "#c60" },
      { ys: r.sigma.map(() => Math.exp(-1)), color: "#999", dash: [4, 4] },
    ], 0.5);
    out.textContent = [
      `blue: r = 1, orange: r = 2, dashed: 1/e (x axis: sigma)`,
      `r = 1 at sigma = 1/k: ${r.r1_at_1_over_k.toFixed(6)}   (1/e = ${Math.exp(-1).toFixed(6)})`,
      `r = 2 at sigma = 2/k: ${r.r2_at_2_over_k.toFixed(6)}   (2/e^2 = ${(2 * Math.exp(-2)).toFixed(6)})`,
      `tame blow-up limits by D = 0, 1, ...: ${r.tame_by_d.map((x) => x.toFixed(4)).join(", ")}`,
    ].join("\n");
  });
}

function runSparse() {
  const out = $("sparse-out");
  const alpha = Number($("alpha").value);
  $("alpha-val").textContent = alpha.toFixed(4);
  guarded(out, () => {
    const r = JSON.parse(sparse_bound(alpha, 200));
    plot($("sparse"), r.nu, [
      { ys: r.bound, color: "#27a" },
      { ys: r.nu.map(() => r.one_over_e), color: "#999", dash: [4, 4] },
    ], 0.6);
    out.textContent = [
      `x axis: brightness nu in [0, 1]; dashed: 1/e`,
      `bound at nu = 1/12: ${r.at_one_twelfth.toFixed(6)}`,
      `alpha threshold ${r.sparse_alpha.alpha_star.toFixed(6)}, chosen alpha ${r.sparse_alpha.alpha.toFixed(6)}, c = ${r.sparse_alpha.c.toFixed(6)}`,
    ].join("\n");
  });
}

await init();
$("status").textContent = "";
$("classify").onclick = runClassify;
$("g6").onkeydown = (e) => e.key === "Enter" && runClassify();
$("k").oninput = runLimits;
$("alpha").oninput = runSparse;
runClassify();
runLimits();
runSparse();
