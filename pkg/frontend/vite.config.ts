import { defineConfig } from 'vitest/config';

export default defineConfig({
  server: {
    proxy: {
      // forward API calls to a locally running backend during development
      '^/(health|articles|sessions|metrics)': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
  },
});
