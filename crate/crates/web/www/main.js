import init, { heatmap, trajectory, ruggedness, suite } from "./pkg/gafoundry_web.js";

const $ = (id) => document.getElementById(id);
const PAD = 40;

function settings() {
  return { config: $("config").value.trim(), fid: Number($("fid").value), seed: BigInt($("seed").value || 0) };
}

function report(id, text, failed = false) {
  $(id).textContent = text;
  $(id).className = failed ? "out err" : "out";
}

function axes(ctx, w, h, xLabel, yLabel) {
  ctx.strokeStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(PAD, PAD / 2);
  ctx.lineTo(PAD, h - PAD);
  ctx.lineTo(w - PAD / 2, h - PAD);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.fillText(xLabel, w / 2, h - 8);
  ctx.save();
  ctx.translate(12, h / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();
}

// white through blue to near black
function shade(f) {
  const l = Math.round(97 - 75 * f);
  return `hsl(215, 70%, ${l}%)`;
}

function drawHeatmap() {
  const { config, fid, seed } = settings();
  const runs = Number($("runs").value);
  const buckets = Number($("buckets").value);
  let h;
  try {
    h = heatmap(config, fid, runs, seed, buckets);
  } catch (e) {
    return report("heatmap-out", e.message ?? String(e), true);
  }
  const canvas = $("heatmap");
  const ctx = canvas.getContext("2d");
  const w = canvas.width - PAD * 2.5, ht = canvas.height - PAD * 1.5;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const f = h.fractions();
  const cw = w / h.cols(), ch = ht / h.rows();
  for (let i = 0; i < h.rows(); i++) {
    for (let j = 0; j < h.cols(); j++) {
      ctx.fillStyle = shade(f[i * h.cols() + j]);
      // target row 0 at the bottom
      ctx.fillRect(PAD + j * cw, PAD / 2 + (h.rows() - 1 - i) * ch, Math.ceil(cw), Math.ceil(ch));
    }
  }
  axes(ctx, canvas.width - PAD, canvas.height, `evaluations (budget ${h.budget()})`, `target (v_max ${h.vMax()})`);
  for (let k = 0; k <= 10; k++) {
    ctx.fillStyle = shade(k / 10);
    ctx.fillRect(canvas.width - PAD, PAD / 2 + (10 - k) * ht / 11, 14, ht / 11);
  }
  report("heatmap-out", `AUC ${h.auc().toFixed(1)} of ${h.rows() * h.cols()}`);
  h.free();
}

function drawTrajectory() {
  const { config, fid, seed } = settings();
  let t;
  try {
    t = trajectory(config, fid, seed, BigInt($("factor").value || 5));
  } catch (e) {
    return report("trajectory-out", e.message ?? String(e), true);
  }
  const canvas = $("trajectory");
  const ctx = canvas.getContext("2d");
  const w = canvas.width - PAD * 1.5, ht = canvas.height - PAD * 1.5;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  axes(ctx, canvas.width, canvas.height, "evaluations", "best so far");
  const budget = Number(t.budget()), vmax = t.vMax();
  const x = (e) => PAD + (e / budget) * w;
  const y = (v) => PAD / 2 + ht - (v / vmax) * ht;
  const evals = t.evals(), values = t.values();
  ctx.strokeStyle = "#1565c0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(x(evals[0]), y(values[0]));
  for (let k = 1; k < evals.length; k++) {
    ctx.lineTo(x(evals[k]), y(values[k - 1]));
    ctx.lineTo(x(evals[k]), y(values[k]));
  }
  ctx.lineTo(x(budget), y(values[values.length - 1]));
  ctx.stroke();
  ctx.lineWidth = 1;
  ctx.setLineDash([4, 4]);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(PAD, y(vmax));
  ctx.lineTo(x(budget), y(vmax));
  ctx.stroke();
  ctx.setLineDash([]);
  report("trajectory-out", `best ${values[values.length - 1]} of ${vmax}, ${evals.length} improvements, AUC ${t.auc()}`);
  t.free();
}

function drawRuggedness() {
  const { fid } = settings();
  let table;
  try {
    table = ruggedness(fid);
  } catch (e) {
    return report("ruggedness-out", e.message ?? String(e), true);
  }
  const canvas = $("ruggedness");
  const ctx = canvas.getContext("2d");
  const w = canvas.width - PAD * 1.5, ht = canvas.height - PAD * 1.5;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  axes(ctx, canvas.width, canvas.height, "OneMax value of the reduced string", "reported fitness");
  const m = table.length - 1;
  const bw = w / table.length;
  let moved = 0;
  table.forEach((v, k) => {
    if (v !== k) moved++;
    ctx.fillStyle = v === k ? "#90a4ae" : "#e65100";
    const hgt = (v / m) * ht;
    ctx.fillRect(PAD + k * bw + 1, PAD / 2 + ht - hgt, Math.max(1, bw - 2), hgt);
  });
  report("ruggedness-out", `${moved} of ${m + 1} values moved`);
}

async function main() {
  await init();
  const rows = suite();
  for (let r = 0; r < rows.length; r += 6) {
    const [fid, n, mu, nu, gamma, vmax] = rows.slice(r, r + 6);
    const opt = document.createElement("option");
    opt.value = fid;
    opt.textContent = `${fid}: n=${n} mu=${mu} nu=${nu} gamma=${gamma} v_max=${vmax}`;
    $("fid").append(opt);
  }
  document.querySelectorAll("button[data-config]").forEach((b) =>
    b.addEventListener("click", () => { $("config").value = b.dataset.config; }));
  $("draw-heatmap").addEventListener("click", drawHeatmap);
  $("draw-trajectory").addEventListener("click", drawTrajectory);
  $("draw-ruggedness").addEventListener("click", drawRuggedness);
  drawRuggedness();
}

main();
