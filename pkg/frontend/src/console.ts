/** Operator console wiring: forms to API calls, 2s polling of the chain
 * and risk views. All state lives on the server. */

import { ApiClient } from "./api.js";
import {
  renderCaseResult,
  renderChain,
  renderError,
  renderSuspects,
  renderVerifyResult,
} from "./render.js";

const POLL_MS = 2000;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node;
}

export function startConsole(api: ApiClient): void {
  const caseForm = el("case-form") as HTMLFormElement;
  caseForm.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const input = el("case-id") as HTMLInputElement;
    const out = el("case-result");
    try {
      out.innerHTML = renderCaseResult(await api.registerCase(input.value));
      input.value = "";
    } catch (err) {
      out.innerHTML = renderError(err);
    }
  });

  const verifyForm = el("verify-form") as HTMLFormElement;
  verifyForm.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const input = el("verify-code") as HTMLInputElement;
    const out = el("verify-result");
    try {
      out.innerHTML = renderVerifyResult(await api.verifyCode(input.value));
    } catch (err) {
      out.innerHTML = renderError(err);
    }
  });

  const suspectForm = el("suspect-form") as HTMLFormElement;
  const querySuspects = async () => {
    const mode = (el("suspect-mode") as HTMLSelectElement).value;
    const value = Number((el("suspect-value") as HTMLInputElement).value);
    const out = el("suspect-result");
    try {
      const opts = mode === "k" ? { k: value } : { threshold: value };
      out.innerHTML = renderSuspects(await api.suspects(opts));
    } catch (err) {
      out.innerHTML = renderError(err);
    }
  };
  suspectForm.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void querySuspects();
  });

  const poll = async () => {
    try {
      el("chain-view").innerHTML = renderChain(await api.chain());
      el("risk-view").innerHTML = renderSuspects(
        await api.suspects({ threshold: 0 }),
      );
      el("status").textContent = "connected";
    } catch (err) {
      el("status").textContent = "disconnected";
    }
  };
  void poll();
  setInterval(() => void poll(), POLL_MS);
}

if (typeof document !== "undefined" && document.getElementById("case-form")) {
  startConsole(new ApiClient(""));
}
