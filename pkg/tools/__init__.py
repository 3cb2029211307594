from .report_tools import FORMATTERS, ReportEnvelope, serialize_report

__all__ = ["FORMATTERS", "ReportEnvelope", "serialize_report"]
