import { initApp } from './app.js';

void initApp();
