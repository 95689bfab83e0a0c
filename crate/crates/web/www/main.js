// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { koch_svg, simplify_overlay, rank_size_svg } from "./pkg/htsimplify_web.js";

const $ = (id) => document.getElementById(id);
const defaults = { ht: 2, dp: 0.05, vw: 17 };

function guard(fn) {
  try {
    $("error").textContent = "";
    fn();
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
  }
}

function iterations() {
  return Number($("koch-n").value);
}

function height() {
  return Number($("koch-h").value);
}

function drawKoch() {
  $("koch-n-out").textContent = iterations();
  $("koch-h-out").textContent = height();
  guard(() => {
    $("koch-plot").innerHTML = koch_svg(iterations(), height());
  });
  drawOverlay();
  drawRank();
}

function drawOverlay() {
  guard(() => {
    const r = JSON.parse(
      simplify_overlay(iterations(), height(), $("algo").value, Number($("param").value), $("repair").checked),
    );
    $("overlay-plot").innerHTML = r.svg;
    $("summary").textContent =
      `${r.algorithm}: ${r.before} -> ${r.after} vertices, ` +
      `ht ${r.ht_before ?? "-"} -> ${r.ht_after ?? "-"}, ` +
      `${r.crossings} crossings, ${r.reinserted} reinserted`;
  });
}

function drawRank() {
  guard(() => {
    $("rank-plot").innerHTML = iterations() > 0 ? rank_size_svg(iterations(), $("measure").value) : "";
  });
}

await init();
$("koch-n").addEventListener("input", drawKoch);
$("koch-h").addEventListener("input", drawKoch);
$("algo").addEventListener("change", () => {
  $("param").value = defaults[$("algo").value];
  drawOverlay();
});
$("param").addEventListener("input", drawOverlay);
$("repair").addEventListener("change", drawOverlay);
$("measure").addEventListener("change", drawRank);
drawKoch();
