// Expects the output of `wasm-bindgen --target web` in ./pkg.
import init, { alcove, fold, fusion, dimension } from "./pkg/verlinde_web.js";

const $ = (id) => document.getElementById(id);

function common() {
  return [$("type").value, Number($("rank").value), $("kind").value, Number($("level").value)];
}

function guarded(out, f) {
  try {
    f();
  } catch (e) {
    out.textContent = "error: " + (e.message ?? e);
  }
}

function renderFusion(data) {
  const labels = data.alphabet.map((w) => "(" + w.join(",") + ")");
  const n = labels.length;
  let html = "";
  // One small matrix per first label: rows mu, columns eta.
  for (let a = 0; a < n; a++) {
    html += `<h3>&lambda; = ${labels[a]}</h3><table><tr><th>&mu; \\ &eta;</th>`;
    html += labels.map((l) => `<th>${l}</th>`).join("") + "</tr>";
    for (let b = 0; b < n; b++) {
      html += `<tr><th>${labels[b]}</th>`;
      for (const v of data.table[a][b]) {
        html += `<td${v < 0 ? ' class="neg"' : ""}>${v}</td>`;
      }
      html += "</tr>";
    }
    html += "</table>";
  }
  return html;
}

await init();

$("alcove-go").onclick = () =>
  guarded($("alcove-out"), () => {
    const d = JSON.parse(alcove(...common()));
    const lines = [
      `fixed algebra ${d.fixed}, shifted level ${d.shifted_level}`,
      `|T| = ${d.order_t}, |T^sigma| = ${d.order_tsigma}`,
      `${d.points.length} points:`,
      ...d.points.map((p) => `  (${p.weight.join(",")})  ->  [${p.pairings.join(", ")}]`),
    ];
    $("alcove-out").textContent = lines.join("\n");
  });

$("fold-go").onclick = () =>
  guarded($("alcove-out"), () => {
    $("alcove-out").textContent = JSON.stringify(JSON.parse(fold(...common(), $("fold-weight").value)), null, 2);
  });

$("fusion-go").onclick = () =>
  guarded($("fusion-out"), () => {
    $("fusion-out").innerHTML = renderFusion(JSON.parse(fusion(...common())));
  });

$("dim-go").onclick = () =>
  guarded($("dim-out"), () => {
    const d = JSON.parse(dimension(...common(), Number($("genus").value), $("fixed").value, $("ambient").value));
    $("dim-out").textContent =
      `general formula   ${d.general}  (residual ${d.general_residual.toExponential(2)})\n` +
      `factorization     ${d.factorized}\n` +
      (d.agree ? "pipelines agree" : "PIPELINES DISAGREE");
  });
