"""Report formatting and graph export."""

from .report_formatter import ReportFormatter
from .dot_export import export_dot, write_dot, drawn_edges, related_agents

__all__ = ['ReportFormatter', 'export_dot', 'write_dot', 'drawn_edges', 'related_agents']
