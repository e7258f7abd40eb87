import init, { yv_polynomial, yv_roots_svg, yv_inverse_sums } from "./pkg/yv_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function run(label, f) {
  $("status").textContent = label + "...";
  $("status").className = "";
  // Let the status paint before the synchronous wasm call.
  setTimeout(() => {
    const t = performance.now();
    try {
      f();
      $("status").textContent = `${label}: ${(performance.now() - t).toFixed(0)} ms`;
    } catch (e) {
      $("status").textContent = String(e);
      $("status").className = "error";
    }
  }, 0);
}

await init();

$("gen").onclick = () => run("generate", () => {
  const d = JSON.parse(yv_polynomial(num("n")));
  $("poly").textContent =
    `Q_${d.n} = ${d.polynomial}\ndegree ${d.degree}, x_n = ${d.x_n}, p_n = ${d.p_n}`;
});

$("roots").onclick = () => run("roots", () => {
  $("plot").innerHTML = yv_roots_svg(num("n"), num("bits"));
});

$("sums").onclick = () => run("sums", () => {
  const rows = JSON.parse(yv_inverse_sums(num("n"), num("mmax")));
  const t = $("table");
  t.innerHTML = "<tr><th>m</th><th>sum of z^-m</th></tr>";
  for (const r of rows) {
    const tr = t.insertRow();
    tr.insertCell().textContent = r.m;
    tr.insertCell().textContent = r.den === "1" ? r.num : `${r.num}/${r.den}`;
  }
});
