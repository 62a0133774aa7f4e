/** Pure formatting helpers: API payloads in, HTML strings out.
 *
 * No business logic — every number shown here was computed by the server.
 */

import {
  ApiRequestError,
  BlockSummary,
  PipelineRecord,
  Suspect,
  VerifyResult,
} from "./types.js";

function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function shortHash(hex: string): string {
  return hex.length > 12 ? `${hex.slice(0, 12)}…` : hex;
}

export function formatRisk(risk: number): string {
  return `${(risk * 100).toFixed(2)}%`;
}

export function renderCaseResult(record: PipelineRecord): string {
  const mined =
    record.mining === null
      ? "<em>buffered — block not yet closed</em>"
      : `mined into block ${record.block_height} by miner ` +
        `${record.mining.winner_miner} with code ` +
        `<code>${esc(record.mining.winning_code)}</code>`;
  return (
    `<p><strong>${esc(record.case_id)}</strong> registered as ` +
    `${esc(record.pattern_id)} (<code>${esc(record.pattern_text)}</code>)</p>` +
    `<p>${record.n_contacts} contact(s), ${record.n_places} place(s); ` +
    `${record.person_codes} person + ${record.building_codes} building ` +
    `code(s) dispatched.</p><p>${mined}</p>`
  );
}

export function renderVerifyResult(result: VerifyResult): string {
  if (!result.valid) {
    return `<p class="bad"><code>${esc(result.code)}</code> is not a valid infection code.</p>`;
  }
  const origin = result.undispatched
    ? "matches a registered pattern but was never dispatched"
    : `traces to case <strong>${esc(result.case_id)}</strong>` +
      (result.contagion_place !== null
        ? ` via place <strong>${esc(result.contagion_place)}</strong>`
        : "") +
      (result.contagion_time !== null
        ? ` at ${esc(result.contagion_time)}`
        : "");
  return (
    `<p class="good"><code>${esc(result.code)}</code> is valid ` +
    `(${esc(result.pattern_id)}): ${origin}.</p>`
  );
}

export function renderSuspects(suspects: Suspect[]): string {
  if (suspects.length === 0) {
    return "<p><em>No suspects match.</em></p>";
  }
  const rows = suspects
    .map(
      (s) =>
        `<tr><td>${esc(s.client_id)}</td><td>${s.n_codes}</td>` +
        `<td>${formatRisk(s.risk)}</td></tr>`,
    )
    .join("");
  return (
    "<table><thead><tr><th>client</th><th>codes</th><th>risk</th>" +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderChain(blocks: BlockSummary[]): string {
  if (blocks.length === 0) {
    return "<p><em>Chain is empty.</em></p>";
  }
  const rows = blocks
    .map(
      (b) =>
        `<tr><td>${b.height}</td><td>${b.n_patterns}</td>` +
        `<td><code>${esc(shortHash(b.bhc))}</code></td>` +
        `<td><code>${esc(b.winning_code)}</code></td>` +
        `<td>${esc(b.timestamp)}</td></tr>`,
    )
    .join("");
  return (
    "<table><thead><tr><th>#</th><th>patterns</th><th>hash</th>" +
    `<th>winning code</th><th>time</th></tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderError(err: unknown): string {
  if (err instanceof ApiRequestError) {
    return `<p class="bad">${esc(err.code)} (${err.status}): ${esc(err.message)}</p>`;
  }
  return `<p class="bad">Request failed: ${esc(err instanceof Error ? err.message : err)}</p>`;
}
