import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { App } from '../src/app';
import { FakeService, FIXTURE_ARTICLES, type FixtureArticle } from './fake-service';

function makeApp(articles: FixtureArticle[] = FIXTURE_ARTICLES): { app: App; service: FakeService } {
  const service = new FakeService(articles);
  const root = document.createElement('div');
  document.body.replaceChildren(root);
  const app = new App(root, new ApiClient('', service.fetch));
  return { app, service };
}

function panelIds(): number[] {
  return [...document.querySelectorAll('[data-testid="panel"] li')].map((li) =>
    Number((li as HTMLElement).dataset.articleId),
  );
}

function panelScores(): string[] {
  return [...document.querySelectorAll('[data-testid="panel"] .score')].map(
    (node) => node.textContent ?? '',
  );
}

describe('reading loop', () => {
  let app: App;
  let service: FakeService;

  beforeEach(async () => {
    ({ app, service } = makeApp());
    await app.init();
  });

  it('creates a session and renders the article list', () => {
    expect(app.sessionId).toBe('s1');
    const headlines = document.querySelectorAll('[data-testid="article-list"] button.headline');
    expect(headlines).toHaveLength(4);
  });

  it('read with a near-duplicate puts the duplicate on top at 1.00, reading it removes it', async () => {
    await app.openArticle(0);
    expect(app.readIds).toEqual([0]);
    expect(panelIds()[0]).toBe(1);
    expect(panelScores()[0]).toBe('1.00');

    await app.openArticle(1);
    expect(app.readIds).toEqual([0, 1]);
    expect(panelIds()).not.toContain(1);
    expect(panelIds()).not.toContain(0);
  });

  it('never displays a recommendation from the read set', async () => {
    app.setControls({ threshold: 0 });
    for (const id of [0, 2, 1]) {
      await app.openArticle(id);
      const shown = panelIds();
      for (const readId of app.readIds) expect(shown).not.toContain(readId);
    }
  });

  it('threshold slider at 1.0 empties the panel', async () => {
    await app.openArticle(0);
    expect(panelIds().length).toBeGreaterThan(0);

    const slider = document.querySelector('[data-testid="threshold"]') as HTMLInputElement;
    slider.value = '1';
    slider.dispatchEvent(new Event('input'));
    await app.refreshRecommendations();
    expect(panelIds()).toEqual([]);
    expect(document.querySelector('[data-testid="panel-empty"]')!.classList.contains('hidden')).toBe(false);
  });

  it('threshold 0 with nonzero-score candidates returns up to k results', async () => {
    app.setControls({ threshold: 0, k: 2 });
    await app.openArticle(0);
    expect(panelIds()).toHaveLength(2);
  });

  it('raising the threshold never grows the panel', async () => {
    await app.openArticle(0);
    let previous = Number.POSITIVE_INFINITY;
    for (const threshold of [0, 0.3, 0.6, 0.9, 1]) {
      app.setControls({ threshold });
      await app.refreshRecommendations();
      const size = panelIds().length;
      expect(size).toBeLessThanOrEqual(previous);
      previous = size;
    }
  });

  it('backend toggle refetches with the other backend', async () => {
    await app.openArticle(0);
    const select = document.querySelector('[data-testid="backend"]') as HTMLSelectElement;
    select.value = 'embedding';
    select.dispatchEvent(new Event('change'));
    await app.refreshRecommendations();
    const calls = service.requestLog.filter((line) => line.includes('backend=embedding'));
    expect(calls.length).toBeGreaterThan(0);
  });

  it('renders the article body right-to-left', async () => {
    await app.openArticle(0);
    const article = document.querySelector('[data-testid="article"]') as HTMLElement;
    expect(article.getAttribute('dir')).toBe('rtl');
    expect(article.textContent).toContain('پاکستان کرکٹ ٹیم فتح');
  });

  it('reading an unknown article shows an inline error', async () => {
    await app.openArticle(99);
    const error = document.querySelector('[data-testid="article-error"]') as HTMLElement;
    expect(error.classList.contains('hidden')).toBe(false);
    expect(error.textContent).toBeTruthy();
  });

  it('serializes rapid reads in click order', async () => {
    const first = app.openArticle(0);
    const second = app.openArticle(2);
    await Promise.all([first, second]);
    expect(app.readIds).toEqual([0, 2]);
    const readCalls = service.requestLog.filter((line) => line.includes('/read'));
    expect(readCalls).toHaveLength(2);
  });
});

describe('browsing', () => {
  it('shows an empty-state message for an empty corpus', async () => {
    const { app } = makeApp([]);
    await app.init();
    expect(document.querySelector('[data-testid="article-list"]')!.textContent).toContain(
      'کوئی خبر دستیاب نہیں',
    );
  });

  it('paginates 25 articles into 3 pages of 10', async () => {
    const articles: FixtureArticle[] = Array.from({ length: 25 }, (_, i) => ({
      id: i,
      headline: `خبر ${i}`,
      body: `متن ${i}`,
      category: 'Sports',
    }));
    const { app } = makeApp(articles);
    await app.init();
    expect(app.pageCount()).toBe(3);
    expect(document.querySelectorAll('[data-testid="article-list"] li')).toHaveLength(10);

    const next = document.querySelector('[data-testid="next"]') as HTMLButtonElement;
    next.click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    next.click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(document.querySelectorAll('[data-testid="article-list"] li')).toHaveLength(5);
    expect(document.querySelector('[data-testid="page-info"]')!.textContent).toBe('صفحہ 3/3');
  });

  it('category filter shows only matching rows', async () => {
    const { app } = makeApp();
    await app.init();
    const select = document.querySelector('[data-testid="category"]') as HTMLSelectElement;
    select.value = 'BusinessEconomics';
    select.dispatchEvent(new Event('change'));
    await new Promise((resolve) => setTimeout(resolve, 0));
    const rows = document.querySelectorAll('[data-testid="article-list"] li');
    expect(rows).toHaveLength(1);
    expect(rows[0].textContent).toContain('بجٹ');
  });

  it('shows a retry banner when the service is down', async () => {
    const { app, service } = makeApp();
    service.down = true;
    await app.init();
    const banner = document.querySelector('[data-testid="banner"]') as HTMLElement;
    expect(banner.classList.contains('hidden')).toBe(false);

    service.down = false;
    (document.querySelector('[data-testid="retry"]') as HTMLButtonElement).click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(app.sessionId).toBe('s1');
  });
});

describe('control bounds', () => {
  it('clamps threshold to [0, 1] and k to [1, 50]', async () => {
    const { app } = makeApp();
    await app.init();
    app.setControls({ threshold: 2, k: 500 });
    expect(app.controls.threshold).toBe(1);
    expect(app.controls.k).toBe(50);
    app.setControls({ threshold: -1, k: 0 });
    expect(app.controls.threshold).toBe(0);
    expect(app.controls.k).toBe(1);
  });

  it('shows the active threshold next to the slider', async () => {
    const { app } = makeApp();
    await app.init();
    app.setControls({ threshold: 0.75 });
    expect(document.querySelector('[data-testid="threshold-value"]')!.textContent).toBe('> 0.75');
  });
});
