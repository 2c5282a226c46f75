/** Activity 2 (steps 2-7): typed components and their capture fields. */
import type { AppContext } from "../context";
import { FIELD_HELP, helpIcon } from "../help";
import type { ComponentDoc } from "../types";
import { IMPACTS, SCOPES, CONNECTIVITIES } from "../types";

function field(labelText: string, control: HTMLElement, helpKey?: string): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  const caption = document.createElement("span");
  caption.textContent = labelText;
  wrap.appendChild(caption);
  if (helpKey && FIELD_HELP[helpKey]) {
    wrap.appendChild(helpIcon(labelText, FIELD_HELP[helpKey]));
  }
  wrap.appendChild(control);
  return wrap;
}

export function renderComponents(root: HTMLElement, ctx: AppContext): void {
  const { system, catalog, wizard } = ctx.store.get();
  const page = document.createElement("section");
  page.className = "page";

  const heading = document.createElement("h2");
  heading.textContent = "Steps 2-7 - Components and their context";
  page.appendChild(heading);

  if (!system) {
    root.appendChild(page);
    return;
  }

  // -- step 2: add typed components ------------------------------------
  const addForm = document.createElement("form");
  addForm.className = "row";
  const name = document.createElement("input");
  name.placeholder = "component name";
  name.id = "component-name";
  const typePick = document.createElement("select");
  typePick.id = "component-type";
  for (const componentType of catalog?.component_types ?? []) {
    const option = document.createElement("option");
    option.value = componentType.name;
    option.textContent = componentType.name;
    typePick.appendChild(option);
  }
  const add = document.createElement("button");
  add.textContent = "Add component (step 2)";
  addForm.append(name, typePick, add);
  addForm.onsubmit = async (event) => {
    event.preventDefault();
    if (!name.value.trim()) return;
    await ctx.addComponent(name.value.trim(), typePick.value);
    addForm.reset();
  };
  page.appendChild(addForm);

  const picker = document.createElement("div");
  picker.className = "component-tabs";
  for (const component of system.components) {
    const tab = document.createElement("button");
    tab.textContent = `${component.name} (${component.component_type})`;
    tab.className = component.id === (wizard.componentId ?? system.components[0]?.id) ? "tab active" : "tab";
    tab.onclick = () => ctx.selectComponent(component.id);
    const remove = document.createElement("button");
    remove.className = "danger small";
    remove.textContent = "x";
    remove.title = `remove ${component.name}`;
    remove.onclick = () => ctx.deleteComponent(component.id);
    const cell = document.createElement("span");
    cell.append(tab, remove);
    picker.appendChild(cell);
  }
  page.appendChild(picker);

  const component = system.components.find((c) => c.id === wizard.componentId) ?? system.components[0];
  if (component) page.appendChild(editor(component, ctx));
  root.appendChild(page);
}

function editor(component: ComponentDoc, ctx: AppContext): HTMLElement {
  const box = document.createElement("div");
  box.className = "editor";

  // -- step 3: descriptive text -----------------------------------------
  const description = document.createElement("textarea");
  description.id = "component-description";
  description.value = component.description;
  description.placeholder = "what the component does, interfaces, use cases";
  description.onchange = () => ctx.patchAssessment(component.id, { description: description.value });
  box.appendChild(field("Description and features (step 3)", description));

  // -- step 4: impact ----------------------------------------------------
  const impact = document.createElement("select");
  impact.id = "impact";
  const unset = document.createElement("option");
  unset.value = "";
  unset.textContent = "- not set -";
  impact.appendChild(unset);
  for (const level of IMPACTS) {
    const option = document.createElement("option");
    option.value = level;
    option.textContent = level;
    if (component.impact === level) option.selected = true;
    impact.appendChild(option);
  }
  impact.onchange = () =>
    ctx.patchAssessment(component.id, { impact: (impact.value || null) as never });
  box.appendChild(field("Impact of a breach (step 4)", impact, "impact"));

  // -- step 5: mechanisms -------------------------------------------------
  const mechanisms = document.createElement("input");
  mechanisms.id = "mechanisms";
  mechanisms.value = component.communication_mechanisms.join(", ");
  mechanisms.placeholder = "wifi, bluetooth, cellular, public-internet";
  mechanisms.onchange = () =>
    ctx.patchAssessment(component.id, {
      communication_mechanisms: mechanisms.value
        .split(",")
        .map((m) => m.trim())
        .filter(Boolean),
    });
  box.appendChild(field("Communication mechanisms (step 5)", mechanisms, "mechanisms"));

  // -- step 6: scope --------------------------------------------------------
  const scope = document.createElement("select");
  scope.id = "network-scope";
  const scopeUnset = document.createElement("option");
  scopeUnset.value = "";
  scopeUnset.textContent = "- not set -";
  scope.appendChild(scopeUnset);
  for (const value of SCOPES) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    if (component.network_scope === value) option.selected = true;
    scope.appendChild(option);
  }
  scope.onchange = () =>
    ctx.patchAssessment(component.id, { network_scope: (scope.value || null) as never });
  box.appendChild(field("Network scope (step 6)", scope, "scope"));

  // -- step 7: connectivity --------------------------------------------------
  const connectivity = document.createElement("select");
  connectivity.id = "connectivity";
  const derived = document.createElement("option");
  derived.value = "";
  derived.textContent = "derive from steps 5-6";
  connectivity.appendChild(derived);
  for (const level of CONNECTIVITIES) {
    const option = document.createElement("option");
    option.value = level;
    option.textContent = `${level} (override)`;
    if (component.connectivity?.level === level && component.connectivity.provenance === "user_override") {
      option.selected = true;
    }
    connectivity.appendChild(option);
  }
  connectivity.onchange = () =>
    ctx.patchAssessment(component.id, {
      connectivity: connectivity.value
        ? { level: connectivity.value as never, provenance: "user_override" }
        : null,
    });
  const current = component.connectivity
    ? `currently ${component.connectivity.level} (${component.connectivity.provenance})`
    : "currently unset; the engine derives it at compute time";
  const note = document.createElement("p");
  note.className = "hint";
  note.id = "connectivity-note";
  note.textContent = current;
  box.appendChild(field("Connectivity level (step 7)", connectivity, "connectivity"));
  box.appendChild(note);
  return box;
}
