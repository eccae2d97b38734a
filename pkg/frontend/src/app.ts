/**
 * Single-page UI over the practicesearch API: home (search bar and engine
 * selector), results (cards with feedback controls), practices (filterable
 * list), and stages (the pipeline, one section per stage).
 */

import {
  Engine,
  FeedbackEvent,
  SearchResponse,
  SearchResult,
  getPractices,
  getStages,
  postFeedback,
  search,
} from './api.js';

type View = 'home' | 'results' | 'practices' | 'stages';

interface ViewState {
  view: View;
  query: string;
  engine: Engine;
  stageFilter: string;
  taskFilter: string;
  lastResponse: SearchResponse | null;
}

// Static guidance shown next to the avatar on each view.
const GUIDE: Record<View, string> = {
  home: 'Describe what you are working on and pick an engine: ir searches '
    + 'the curated catalog, glm asks a language model for suggestions.',
  results: 'Tell us which practices helped: mark them useful or not, and '
    + 'rate them with stars. Your feedback improves the catalog.',
  practices: 'Browse the whole catalog here. Narrow it down by pipeline '
    + 'stage or by task.',
  stages: 'The ML pipeline from requirements to support tasks. Each stage '
    + 'lists its recommended practices.',
};

const STAGE_NAMES = [
  'ModelRequirements', 'DataCollection', 'DataCleaning', 'FeatureEngineering',
  'DataLabeling', 'ModelTraining', 'ModelEvaluation', 'ModelDeployment',
  'ModelMonitoring', 'SupportTasks',
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function createApp(root: HTMLElement): void {
  const state: ViewState = {
    view: 'home',
    query: '',
    engine: 'ir',
    stageFilter: '',
    taskFilter: '',
    lastResponse: null,
  };

  // Feedback already sent (or in flight) this session, keyed by target.
  const sentVerdicts = new Set<string>();
  const sentStars = new Set<string>();
  let searchController: AbortController | null = null;

  root.replaceChildren();
  const banner = el('div', 'banner');
  banner.hidden = true;
  const nav = el('nav', 'nav');
  const guide = el('div', 'guide');
  guide.append(el('span', 'guide-avatar', '[o_o]'), el('p', 'guide-text'));
  const main = el('main', 'main');
  root.append(nav, banner, guide, main);

  const navButtons: Partial<Record<View, HTMLButtonElement>> = {};
  (['home', 'results', 'practices', 'stages'] as View[]).forEach((view) => {
    const button = el('button', 'nav-link', view);
    button.addEventListener('click', () => showView(view));
    navButtons[view] = button;
    nav.append(button);
  });

  function showError(message: string): void {
    banner.textContent = message;
    banner.hidden = false;
  }

  function clearError(): void {
    banner.hidden = true;
    banner.textContent = '';
  }

  function showView(view: View): void {
    // Results only exist once a query has produced a response.
    if (view === 'results' && state.lastResponse === null) return;
    state.view = view;
    clearError();
    guide.querySelector('.guide-text')!.textContent = GUIDE[view];
    navButtons.results!.disabled = state.lastResponse === null;
    for (const [name, button] of Object.entries(navButtons)) {
      button.classList.toggle('active', name === view);
    }
    main.replaceChildren();
    if (view === 'home') renderHome();
    else if (view === 'results') renderResults();
    else if (view === 'practices') renderPractices();
    else renderStages();
  }

  function renderHome(): void {
    const form = el('form', 'search-form');
    const input = el('input', 'search-input');
    input.type = 'search';
    input.placeholder = 'e.g. data cleaning';
    input.value = state.query;

    const selector = el('select', 'engine-select');
    for (const engine of ['ir', 'glm'] as Engine[]) {
      const option = el('option', undefined, engine);
      option.value = engine;
      selector.append(option);
    }
    selector.value = state.engine;
    selector.addEventListener('change', () => {
      state.engine = selector.value as Engine;
    });

    const submit = el('button', 'search-submit', 'search');
    submit.type = 'submit';
    form.append(input, selector, submit);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const text = input.value.trim();
      if (!text) return;
      state.query = text;
      void runSearch(text, state.engine);
    });
    main.append(form);
  }

  async function runSearch(query: string, engine: Engine): Promise<void> {
    // A new submission supersedes any search still in flight.
    if (searchController) searchController.abort();
    searchController = new AbortController();
    try {
      const response = await search(query, engine, 10, searchController.signal);
      state.lastResponse = response;
      showView('results');
    } catch (error) {
      if (error instanceof DOMException && error.name === 'AbortError') return;
      showError(String(error instanceof Error ? error.message : error));
    }
  }

  function feedbackBase(target: string): FeedbackEvent {
    return {
      query: state.lastResponse!.query,
      engine_used: state.engine,
      target,
    };
  }

  async function sendVerdict(
    target: string,
    verdict: 'useful' | 'not_useful',
    row: HTMLElement,
  ): Promise<void> {
    if (sentVerdicts.has(target)) return;
    sentVerdicts.add(target);
    try {
      await postFeedback({ ...feedbackBase(target), verdict });
      row.querySelectorAll('button').forEach((b) => { b.disabled = true; });
      row.append(el('span', 'feedback-ack', 'thanks!'));
    } catch (error) {
      sentVerdicts.delete(target); // allow a retry
      showError(String(error instanceof Error ? error.message : error));
    }
  }

  async function sendStars(
    target: string,
    stars: number,
    row: HTMLElement,
  ): Promise<void> {
    if (sentStars.has(target)) return;
    sentStars.add(target);
    try {
      await postFeedback({ ...feedbackBase(target), stars });
      row.querySelectorAll('button').forEach((b) => { b.disabled = true; });
      row.append(el('span', 'feedback-ack', `${stars}/5`));
    } catch (error) {
      sentStars.delete(target);
      showError(String(error instanceof Error ? error.message : error));
    }
  }

  function resultCard(result: SearchResult): HTMLElement {
    const card = el('article', 'card');
    const header = el('header', 'card-header');
    header.append(el('h3', 'card-title', result.title));
    if (result.task !== undefined) {
      header.append(el('span', 'chip', result.task));
    }
    if (result.score !== undefined) {
      header.append(el('span', 'score', result.score.toFixed(4)));
    }
    card.append(header);
    if (result.description !== undefined) {
      card.append(el('p', 'card-description', result.description));
    }

    const verdictRow = el('div', 'verdict-row');
    for (const verdict of ['useful', 'not_useful'] as const) {
      const button = el('button', `verdict-${verdict}`, verdict.replace('_', ' '));
      button.addEventListener('click', () => {
        void sendVerdict(result.title, verdict, verdictRow);
      });
      verdictRow.append(button);
    }
    const starRow = el('div', 'star-row');
    for (let n = 1; n <= 5; n += 1) {
      const button = el('button', 'star', '*'.repeat(n));
      button.title = `${n} star${n > 1 ? 's' : ''}`;
      button.addEventListener('click', () => {
        void sendStars(result.title, n, starRow);
      });
      starRow.append(button);
    }
    card.append(verdictRow, starRow);
    return card;
  }

  function renderResults(): void {
    const response = state.lastResponse!;
    const heading = el('div', 'results-heading');
    heading.append(el('h2', undefined, `results for "${response.query}"`));
    if (response.engine !== undefined) {
      // Absent in blind mode; never invent a label.
      heading.append(el('span', 'engine-label', `engine: ${response.engine}`));
    }
    main.append(heading);
    if (response.results.length === 0) {
      main.append(el('p', 'empty-notice', 'no practices found'));
      return;
    }
    const list = el('section', 'results');
    for (const result of response.results) list.append(resultCard(result));
    main.append(list);
  }

  function renderPractices(): void {
    const controls = el('div', 'filters');
    const stageSelect = el('select', 'stage-filter');
    const anyStage = el('option', undefined, 'all stages');
    anyStage.value = '';
    stageSelect.append(anyStage);
    for (const name of STAGE_NAMES) {
      const option = el('option', undefined, name);
      option.value = name;
      stageSelect.append(option);
    }
    stageSelect.value = state.stageFilter;

    const taskInput = el('input', 'task-filter');
    taskInput.placeholder = 'task';
    taskInput.value = state.taskFilter;

    const apply = el('button', 'apply-filters', 'filter');
    controls.append(stageSelect, taskInput, apply);
    const list = el('section', 'practice-list');
    main.append(controls, list);

    async function refresh(): Promise<void> {
      try {
        const body = await getPractices(
          state.stageFilter || undefined,
          state.taskFilter || undefined,
        );
        list.replaceChildren();
        for (const practice of body.practices) {
          const card = el('article', 'card');
          const header = el('header', 'card-header');
          header.append(el('h3', 'card-title', practice.title));
          header.append(el('span', 'chip', practice.task));
          header.append(el('span', 'stage-tag', practice.stage));
          card.append(header, el('p', 'card-description', practice.description));
          list.append(card);
        }
        if (body.practices.length === 0) {
          list.append(el('p', 'empty-notice', 'no practices match'));
        }
      } catch (error) {
        showError(String(error instanceof Error ? error.message : error));
      }
    }

    apply.addEventListener('click', () => {
      state.stageFilter = stageSelect.value;
      state.taskFilter = taskInput.value.trim();
      void refresh();
    });
    void refresh();
  }

  function renderStages(): void {
    const container = el('div', 'stages');
    main.append(container);
    getStages().then((body) => {
      for (const group of body.stages) {
        const section = el('section', 'stage-section');
        section.append(el('h2', 'stage-name', group.stage));
        const list = el('ul', 'stage-practices');
        for (const practice of group.practices) {
          const item = el('li');
          item.append(
            el('strong', undefined, practice.title),
            el('span', 'chip', practice.task),
          );
          list.append(item);
        }
        section.append(list);
        container.append(section);
      }
      container.append(el('p', 'stages-note', body.note));
    }).catch((error) => {
      showError(String(error instanceof Error ? error.message : error));
    });
  }

  showView('home');
}
