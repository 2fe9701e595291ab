import { ApiClient, ApiError } from './api';
import type { ArticleDetail, Backend, Recommendation } from './types';
import { CATEGORIES } from './types';

const PAGE_SIZE = 10;

interface Controls {
  threshold: number;
  k: number;
  backend: Backend;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

/**
 * Reading-session client: browse headlines, open an article (which records
 * the read), and watch the recommendation panel follow the latest read.
 * All scoring happens server-side; this class only renders responses.
 */
export class App {
  sessionId: string | null = null;
  readIds: number[] = [];
  offset = 0;
  total = 0;
  category: string | null = null;
  currentArticle: ArticleDetail | null = null;
  recommendations: Recommendation[] = [];
  controls: Controls = { threshold: 0.6, k: 10, backend: 'tfidf' };

  private pendingRead: Promise<void> = Promise.resolve();

  private banner!: HTMLElement;
  private listEl!: HTMLUListElement;
  private pageInfo!: HTMLElement;
  private prevBtn!: HTMLButtonElement;
  private nextBtn!: HTMLButtonElement;
  private categorySelect!: HTMLSelectElement;
  private articleEl!: HTMLElement;
  private articleError!: HTMLElement;
  private panelList!: HTMLOListElement;
  private panelEmpty!: HTMLElement;
  private thresholdInput!: HTMLInputElement;
  private thresholdValue!: HTMLElement;
  private kInput!: HTMLInputElement;
  private backendSelect!: HTMLSelectElement;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {
    this.buildSkeleton();
  }

  private buildSkeleton(): void {
    this.root.replaceChildren();
    const app = el('div', { class: 'app', dir: 'rtl' });

    const header = el('header');
    header.append(el('h1', {}, 'خبر'));
    this.banner = el('div', { class: 'banner hidden', 'data-testid': 'banner' });
    header.append(this.banner);
    app.append(header);

    const main = el('main');

    const browse = el('section', { class: 'browse' });
    const controls = el('div', { class: 'browse-controls' });
    this.categorySelect = el('select', { 'data-testid': 'category' });
    this.categorySelect.append(el('option', { value: '' }, 'تمام زمرے'));
    for (const category of CATEGORIES) {
      this.categorySelect.append(el('option', { value: category }, category));
    }
    this.categorySelect.addEventListener('change', () => {
      this.category = this.categorySelect.value || null;
      this.offset = 0;
      void this.refreshArticles();
    });
    this.prevBtn = el('button', { 'data-testid': 'prev' }, 'پچھلا');
    this.nextBtn = el('button', { 'data-testid': 'next' }, 'اگلا');
    this.prevBtn.addEventListener('click', () => void this.goToPage(-1));
    this.nextBtn.addEventListener('click', () => void this.goToPage(1));
    this.pageInfo = el('span', { 'data-testid': 'page-info' });
    controls.append(this.categorySelect, this.prevBtn, this.pageInfo, this.nextBtn);
    this.listEl = el('ul', { class: 'article-list', 'data-testid': 'article-list' });
    browse.append(controls, this.listEl);

    const reader = el('section', { class: 'reader' });
    this.articleError = el('div', { class: 'error hidden', 'data-testid': 'article-error' });
    this.articleEl = el('article', { 'data-testid': 'article', dir: 'rtl' });
    reader.append(this.articleError, this.articleEl);

    const panel = el('aside', { class: 'panel' });
    panel.append(el('h2', {}, 'تجویز کردہ خبریں'));

    const thresholdRow = el('label', { class: 'control' });
    thresholdRow.append(el('span', {}, 'حد'));
    this.thresholdInput = el('input', {
      type: 'range',
      min: '0',
      max: '1',
      step: '0.01',
      value: String(this.controls.threshold),
      'data-testid': 'threshold',
    });
    this.thresholdValue = el('span', { 'data-testid': 'threshold-value' });
    this.thresholdInput.addEventListener('input', () => {
      this.setControls({ threshold: Number(this.thresholdInput.value) });
    });
    thresholdRow.append(this.thresholdInput, this.thresholdValue);

    const kRow = el('label', { class: 'control' });
    kRow.append(el('span', {}, 'تعداد'));
    this.kInput = el('input', {
      type: 'number',
      min: '1',
      max: '50',
      value: String(this.controls.k),
      'data-testid': 'k',
    });
    this.kInput.addEventListener('change', () => {
      this.setControls({ k: Number(this.kInput.value) });
    });
    kRow.append(this.kInput);

    const backendRow = el('label', { class: 'control' });
    backendRow.append(el('span', {}, 'طریقہ'));
    this.backendSelect = el('select', { 'data-testid': 'backend' });
    this.backendSelect.append(el('option', { value: 'tfidf' }, 'tfidf'));
    this.backendSelect.append(el('option', { value: 'embedding' }, 'embedding'));
    this.backendSelect.addEventListener('change', () => {
      this.setControls({ backend: this.backendSelect.value as Backend });
    });
    backendRow.append(this.backendSelect);

    this.panelEmpty = el('div', { class: 'empty hidden', 'data-testid': 'panel-empty' });
    this.panelList = el('ol', { class: 'recommendations', 'data-testid': 'panel' });
    panel.append(thresholdRow, kRow, backendRow, this.panelEmpty, this.panelList);

    main.append(browse, reader, panel);
    app.append(main);
    this.root.append(app);
    this.renderThresholdValue();
  }

  async init(): Promise<void> {
    try {
      const session = await this.api.createSession();
      this.sessionId = session.session_id;
      this.readIds = session.read_ids;
      this.hideBanner();
    } catch (err) {
      this.showBanner(err);
      return;
    }
    await this.refreshArticles();
  }

  pageCount(): number {
    return Math.max(1, Math.ceil(this.total / PAGE_SIZE));
  }

  private async goToPage(direction: number): Promise<void> {
    const next = this.offset + direction * PAGE_SIZE;
    if (next < 0 || next >= this.total) return;
    this.offset = next;
    await this.refreshArticles();
  }

  async refreshArticles(): Promise<void> {
    try {
      const page = await this.api.listArticles({
        category: this.category ?? undefined,
        offset: this.offset,
        limit: PAGE_SIZE,
      });
      this.total = page.total;
      this.hideBanner();
      this.listEl.replaceChildren();
      if (page.total === 0) {
        this.listEl.append(el('li', { class: 'empty' }, 'کوئی خبر دستیاب نہیں'));
      }
      for (const article of page.articles) {
        const item = el('li');
        const button = el(
          'button',
          { class: 'headline', 'data-article-id': String(article.id) },
          article.headline,
        );
        button.addEventListener('click', () => void this.openArticle(article.id));
        item.append(button, el('span', { class: 'category' }, article.category));
        this.listEl.append(item);
      }
      const pageNum = Math.floor(this.offset / PAGE_SIZE) + 1;
      this.pageInfo.textContent = `صفحہ ${pageNum}/${this.pageCount()}`;
      this.prevBtn.disabled = this.offset === 0;
      this.nextBtn.disabled = this.offset + PAGE_SIZE >= this.total;
    } catch (err) {
      this.showBanner(err);
    }
  }

  /**
   * Open the full article, record the read, then refresh the panel. Reads
   * are chained so rapid clicks reach the backend in click order and the
   * panel always reflects the latest acknowledged read.
   */
  openArticle(articleId: number): Promise<void> {
    this.pendingRead = this.pendingRead.then(() => this.readAndRefresh(articleId));
    return this.pendingRead;
  }

  private async readAndRefresh(articleId: number): Promise<void> {
    if (!this.sessionId) return;
    try {
      const detail = await this.api.getArticle(articleId);
      this.renderArticle(detail);
      const session = await this.api.markRead(this.sessionId, articleId);
      this.readIds = session.read_ids;
    } catch (err) {
      this.showArticleError(err);
      return;
    }
    await this.refreshRecommendations();
  }

  async refreshRecommendations(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const response = await this.api.recommendations(this.sessionId, this.controls);
      this.recommendations = response.recommendations;
      this.renderPanel();
    } catch (err) {
      this.showBanner(err);
    }
  }

  /** Adjust threshold/k/backend; the new values apply to the next fetch. */
  setControls(update: Partial<Controls>): void {
    if (update.threshold !== undefined) {
      this.controls.threshold = Math.min(1, Math.max(0, update.threshold));
    }
    if (update.k !== undefined) {
      this.controls.k = Math.min(50, Math.max(1, Math.round(update.k)));
    }
    if (update.backend !== undefined) this.controls.backend = update.backend;
    this.renderThresholdValue();
    if (this.readIds.length > 0) void this.refreshRecommendations();
  }

  private renderArticle(detail: ArticleDetail): void {
    this.articleError.classList.add('hidden');
    this.articleEl.replaceChildren(
      el('h2', {}, detail.headline),
      el('div', { class: 'meta' }, `${detail.category} · ${detail.news_length} حروف`),
      el('p', { class: 'body' }, detail.body),
    );
    this.currentArticle = detail;
  }

  private renderPanel(): void {
    this.panelList.replaceChildren();
    this.renderThresholdValue();
    if (this.recommendations.length === 0) {
      this.panelEmpty.textContent = 'حد سے اوپر کوئی تجویز نہیں';
      this.panelEmpty.classList.remove('hidden');
      return;
    }
    this.panelEmpty.classList.add('hidden');
    for (const rec of this.recommendations) {
      const item = el('li', { 'data-article-id': String(rec.article_id) });
      const link = el(
        'button',
        { class: 'headline', 'data-testid': `rec-${rec.article_id}` },
        rec.headline,
      );
      link.addEventListener('click', () => void this.openArticle(rec.article_id));
      item.append(link, el('span', { class: 'score' }, rec.score.toFixed(2)));
      this.panelList.append(item);
    }
  }

  private renderThresholdValue(): void {
    this.thresholdValue.textContent = `> ${this.controls.threshold.toFixed(2)}`;
    this.thresholdInput.value = String(this.controls.threshold);
    this.kInput.value = String(this.controls.k);
    this.backendSelect.value = this.controls.backend;
  }

  private showBanner(err: unknown): void {
    const message = err instanceof ApiError ? err.message : String(err);
    this.banner.replaceChildren(
      el('span', {}, `سروس دستیاب نہیں: ${message}`),
    );
    const retry = el('button', { 'data-testid': 'retry' }, 'دوبارہ کوشش کریں');
    retry.addEventListener('click', () => {
      if (this.sessionId) void this.refreshArticles();
      else void this.init();
    });
    this.banner.append(retry);
    this.banner.classList.remove('hidden');
  }

  private hideBanner(): void {
    this.banner.classList.add('hidden');
  }

  private showArticleError(err: unknown): void {
    const message =
      err instanceof ApiError && err.status === 404
        ? 'یہ خبر موجود نہیں'
        : err instanceof ApiError
          ? err.message
          : String(err);
    this.articleError.textContent = message;
    this.articleError.classList.remove('hidden');
  }
}
