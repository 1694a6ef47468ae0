"""Tests package for the Research Agent."""