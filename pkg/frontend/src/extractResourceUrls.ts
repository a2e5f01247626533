/**
 * List the URLs of resources the page has fetched so far, via the
 * resource-timing API, duplicates preserved. The crawler deliberately
 * runs without a network proxy, so the page's own timing entries are the
 * record of what was requested. The navigation entry comes first, then
 * subresources in the order the engine recorded them. Engines without
 * the API yield an empty list.
 */
export function run(): string[] {
  const out: string[] = [];
  try {
    const perf = (window as { performance?: Performance }).performance;
    if (perf && typeof perf.getEntriesByType === "function") {
      const nav = perf.getEntriesByType("navigation") || [];
      for (let i = 0; i < nav.length; i++) {
        if (nav[i] && nav[i].name) {
          out.push(String(nav[i].name));
        }
      }
      const res = perf.getEntriesByType("resource") || [];
      for (let j = 0; j < res.length; j++) {
        if (res[j] && res[j].name) {
          out.push(String(res[j].name));
        }
      }
    }
  } catch {
    // Timing API missing or hostile; report nothing rather than fail.
  }
  return out;
}
