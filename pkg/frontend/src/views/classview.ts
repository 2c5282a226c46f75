/** Activity 4 (steps 9-10): compute, the highlighted lookup tables,
 * and the what-if panel. */
import type { AppContext } from "../context";
import { FIELD_HELP, helpIcon } from "../help";
import { renderLookupTables } from "../tables";
import type { ImprovementOutcome } from "../types";
import { CLASSES } from "../types";
import { computeReady, resultsStale } from "../wizard";
import { describePlan } from "../whatif";

export function renderClassView(root: HTMLElement, ctx: AppContext): void {
  const state = ctx.store.get();
  const { system, result, tables, improvement, wizard } = state;
  const page = document.createElement("section");
  page.className = "page";
  const heading = document.createElement("h2");
  heading.textContent = "Steps 9-10 - Exposure and security class";
  page.appendChild(heading);

  if (!system) {
    root.appendChild(page);
    return;
  }

  const controls = document.createElement("div");
  controls.className = "row";
  const compute = document.createElement("button");
  compute.id = "compute";
  compute.textContent = "Compute security class";
  compute.disabled = !computeReady(system) || state.busy;
  compute.onclick = () => ctx.compute();
  controls.appendChild(compute);
  if (!computeReady(system)) {
    const why = document.createElement("span");
    why.className = "hint";
    why.textContent =
      system.components.length === 0
        ? "add at least one component first"
        : "every component needs its impact, networking and answers first";
    controls.appendChild(why);
  }
  if (resultsStale(system, wizard)) {
    const badge = document.createElement("span");
    badge.id = "stale-badge";
    badge.className = "badge stale";
    badge.textContent = "inputs changed - recompute";
    controls.appendChild(badge);
  }
  page.appendChild(controls);

  if (result) {
    const verdict = document.createElement("p");
    verdict.className = "verdict";
    verdict.innerHTML = `System class: <strong id="system-class" class="grade grade-${result.system_class}">${result.system_class}</strong>`;
    page.appendChild(verdict);

    const table = document.createElement("table");
    table.className = "results";
    table.innerHTML =
      "<tr><th>component</th><th>protection</th><th>connectivity</th>" +
      "<th>exposure</th><th>impact</th><th>class</th><th>confidence</th></tr>";
    for (const component of result.components) {
      const row = table.insertRow();
      row.dataset.componentId = component.component_id;
      for (const value of [
        component.name,
        component.protection,
        component.connectivity,
        component.exposure,
        component.impact,
        component.class,
        String(Math.round(component.confidence * 1e6) / 1e6),
      ]) {
        row.insertCell().textContent = value;
      }
    }
    page.appendChild(table);

    // one pair of highlighted tables per component, driven by its trace
    for (const component of result.components) {
      const caption = document.createElement("h3");
      caption.textContent = `${component.name}: the cells behind ${component.class}`;
      page.appendChild(caption);
      const blocking = component.trace.find((f) => f.step === "protection");
      if (blocking?.blocking_criteria?.length) {
        const why = document.createElement("p");
        why.className = "hint";
        why.textContent =
          `protection held at ${component.protection}; ${blocking.blocking_level} needs ` +
          blocking.blocking_criteria.join(", ");
        page.appendChild(why);
      }
      const mount = document.createElement("div");
      mount.className = "tables";
      mount.dataset.componentId = component.component_id;
      if (tables) renderLookupTables(mount, tables, component.trace);
      page.appendChild(mount);
    }

    page.appendChild(whatIfPanel(ctx, improvement));
  }
  root.appendChild(page);
}

function whatIfPanel(ctx: AppContext, improvement: ImprovementOutcome[] | null): HTMLElement {
  const panel = document.createElement("section");
  panel.id = "whatif";
  panel.className = "whatif";
  const heading = document.createElement("h3");
  heading.textContent = "What if - reach a better class";
  heading.appendChild(helpIcon("Target class", FIELD_HELP.target));
  panel.appendChild(heading);

  const row = document.createElement("div");
  row.className = "row";
  const target = document.createElement("select");
  target.id = "target-class";
  for (const grade of CLASSES) {
    const option = document.createElement("option");
    option.value = grade;
    option.textContent = grade;
    target.appendChild(option);
  }
  const search = document.createElement("button");
  search.id = "find-plans";
  search.textContent = "Find plans";
  search.onclick = () => ctx.findPlans(target.value as never);
  row.append(target, search);
  const overlayState = ctx.store.get().overlay;
  if (overlayState) {
    const discard = document.createElement("button");
    discard.id = "discard-overlay";
    discard.className = "danger";
    discard.textContent = "Discard applied plan";
    discard.onclick = () => ctx.discardOverlay();
    row.appendChild(discard);
  }
  panel.appendChild(row);

  for (const outcome of improvement ?? []) {
    const box = document.createElement("div");
    box.className = "plans";
    const title = document.createElement("h4");
    title.textContent = `${outcome.name}: ${outcome.status.replace(/_/g, " ")}`;
    box.appendChild(title);
    if (outcome.note) {
      const note = document.createElement("p");
      note.className = "hint";
      note.textContent = outcome.note;
      box.appendChild(note);
    }
    outcome.plans.slice(0, 5).forEach((plan, index) => {
      const item = document.createElement("div");
      item.className = "plan";
      const label = document.createElement("span");
      label.textContent =
        `plan ${index + 1}: ${describePlan(plan)} → (${plan.protection}, ` +
        `${plan.connectivity}), exposure ${plan.exposure}, class ${plan.class}`;
      const apply = document.createElement("button");
      apply.className = "apply-plan";
      apply.textContent = "Apply and recompute";
      apply.onclick = () => ctx.applyPlanOverlay(outcome.component_id, plan);
      item.append(label, apply);
      box.appendChild(item);
    });
    panel.appendChild(box);
  }
  return panel;
}
