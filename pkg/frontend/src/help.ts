/** Help surfaces: a slide-over guide sidebar reachable from every page,
 * and modal detail boxes for individual criteria and fields. */
import { STEPS } from "./wizard";

const GUIDE_INTRO =
  "Work through the numbered steps. The first four capture what the " +
  "system is; impact is a judgement call you enter by hand; networking " +
  "facts let the tool suggest a connectivity level; the checklist " +
  "determines the protection level; the last two steps are pure table " +
  "lookups done for you.";

export const FIELD_HELP: Record<string, string> = {
  impact:
    "Worst-case consequence if this component is breached, from Insignificant " +
    "to Catastrophic. Judge it once, like a risk assessment would; it rarely " +
    "changes over a product's life, and a rough call is fine to start with.",
  mechanisms:
    "Communication standards the component uses (wifi, bluetooth, ethernet, " +
    "cellular, public-internet...). Unknown tags are rated conservatively.",
  scope:
    "isolated: no network at all; home_area: local network only; wide_area: " +
    "reachable across site boundaries or the internet.",
  connectivity:
    "Suggested from the mechanisms and scope; override it if you know better. " +
    "The override is recorded as yours.",
  beliefs:
    "Optional confidence inputs. Belief is how sure you are of an answer " +
    "(0 to 1); weight is how much that answer matters for the overall " +
    "confidence score. They never change the class itself.",
  target:
    "Pick the class you want to reach; the tool lists the smallest change " +
    "sets that get there, verified by re-running the classification.",
};

export function buildHelpSidebar(): { root: HTMLElement; toggle: HTMLButtonElement } {
  const root = document.createElement("aside");
  root.id = "help-sidebar";
  root.className = "help-sidebar";
  const heading = document.createElement("h3");
  heading.textContent = "User guide";
  const intro = document.createElement("p");
  intro.textContent = GUIDE_INTRO;
  const list = document.createElement("ol");
  for (const step of STEPS) {
    const item = document.createElement("li");
    item.value = step.step;
    item.textContent = step.title;
    list.appendChild(item);
  }
  const close = document.createElement("button");
  close.textContent = "Close";
  close.className = "help-close";
  close.onclick = () => root.classList.remove("open");
  root.append(close, heading, intro, list);

  const toggle = document.createElement("button");
  toggle.id = "help-toggle";
  toggle.className = "help-toggle";
  toggle.textContent = "? Help";
  toggle.title = "Open the user guide";
  toggle.onclick = () => root.classList.toggle("open");
  return { root, toggle };
}

/** A small "?" icon that opens a modal with detail text on click. */
export function helpIcon(title: string, text: string): HTMLElement {
  const icon = document.createElement("button");
  icon.className = "help-icon";
  icon.textContent = "?";
  icon.setAttribute("aria-label", `About ${title}`);
  icon.onclick = (event) => {
    event.preventDefault();
    openModal(title, text);
  };
  return icon;
}

export function openModal(title: string, text: string): void {
  closeModal();
  const backdrop = document.createElement("div");
  backdrop.className = "modal-backdrop";
  backdrop.onclick = (event) => {
    if (event.target === backdrop) closeModal();
  };
  const modal = document.createElement("div");
  modal.className = "modal";
  const heading = document.createElement("h3");
  heading.textContent = title;
  const body = document.createElement("p");
  body.textContent = text;
  const close = document.createElement("button");
  close.textContent = "Close";
  close.onclick = () => closeModal();
  modal.append(heading, body, close);
  backdrop.appendChild(modal);
  document.body.appendChild(backdrop);
}

export function closeModal(): void {
  document.querySelector(".modal-backdrop")?.remove();
}
