import './style.css';
import { ApiClient } from './api';
import { App } from './app';

// `?api=http://host:port` points the client at a backend on another origin;
// by default requests go to the same origin (the vite dev server proxies).
const apiBase = new URLSearchParams(window.location.search).get('api') ?? '';

const root = document.getElementById('root');
if (!root) throw new Error('missing #root element');

const app = new App(root, new ApiClient(apiBase));
void app.init();
