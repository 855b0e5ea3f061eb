import init, { curve, relations, envelope } from "./pkg/desirability_demo.js";

const $ = (id) => document.getElementById(id);

function fmt(v) {
  return Number(v.toFixed(6)).toString();
}

function matrixTable(rows) {
  const head = "<tr><th></th>" + rows.map((_, j) => `<th>w${j}</th>`).join("") + "</tr>";
  const body = rows
    .map((row, i) => `<tr><th>w${i}</th>` + row.map((v) => `<td>${fmt(v)}</td>`).join("") + "</tr>")
    .join("");
  return `<table>${head}${body}</table>`;
}

function drawCurve() {
  const fixed = Number($("curve-fixed").value);
  $("curve-fixed-value").textContent = fixed.toFixed(2);
  const ys = curve($("curve-profile").value, $("curve-op").value, fixed, 201);
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#ddd";
  ctx.beginPath();
  ctx.moveTo(0, h);
  ctx.lineTo(w, 0);
  ctx.stroke();
  ctx.strokeStyle = "#1565c0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ys.forEach((y, i) => {
    const px = (i / (ys.length - 1)) * w;
    const py = h - y * h;
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  });
  ctx.stroke();
}

function showRelations() {
  $("rel-error").textContent = "";
  try {
    const values = $("rel-values").value.split(/[\s,]+/).filter(Boolean).map(Number);
    const r = JSON.parse(relations(new Float64Array(values), $("rel-profile").value));
    $("rel-ranking").textContent =
      "Ranking: " + r.ranking.map((w) => `w${w}`).join(" > ") + (r.axioms_pass ? "" : " (axioms fail)");
    $("rel-preference").innerHTML = matrixTable(r.preference);
    $("rel-similarity").innerHTML = matrixTable(r.similarity);
  } catch (e) {
    $("rel-error").textContent = String(e.message ?? e);
  }
}

function showEnvelope() {
  $("env-error").textContent = "";
  try {
    const rows = $("env-input").value.trim().split("\n").map((l) => l.trim().split(/\s+/).map(Number));
    const flat = new Float64Array(rows.flat());
    const out = envelope(flat, $("env-conorm").value);
    const n = rows.length;
    const matrix = Array.from({ length: n }, (_, i) => Array.from(out.slice(i * n, (i + 1) * n)));
    $("env-output").innerHTML = matrixTable(matrix);
  } catch (e) {
    $("env-error").textContent = String(e.message ?? e);
    $("env-output").innerHTML = "";
  }
}

await init();
for (const id of ["curve-profile", "curve-op", "curve-fixed"]) $(id).addEventListener("input", drawCurve);
for (const id of ["rel-values", "rel-profile"]) $(id).addEventListener("input", showRelations);
for (const id of ["env-input", "env-conorm"]) $(id).addEventListener("input", showEnvelope);
drawCurve();
showRelations();
showEnvelope();
