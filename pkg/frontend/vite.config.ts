import { defineConfig } from "vitest/config";

// The dev server proxies API calls to a locally running `secclass serve`
// so the UI can be developed against live data without CORS fuss.
export default defineConfig({
  server: {
    port: 5173,
    proxy: {
      "/api": {
        target: process.env.SECCLASS_API ?? "http://127.0.0.1:8754",
        changeOrigin: true,
        rewrite: (path) => path.replace(/^\/api/, ""),
      },
    },
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
  },
});
