"""
Observability module for the UC-reduction toolkit
Counts identity checks per identity id, with timings, failures and alerts.

How this file ties into the app:
- `src/identities.py`, `src/gvars.py`, `src/lax.py` and the commands record every
  certified identity into `metrics_collector`.
- `src/middleware.py` records one `command:<name>` entry per CLI run.
- `commands/reporting.py` embeds `get_metrics()` and the recent failures in every report.
- `src/app.py` turns `check_alert_conditions()` into `alert_manager` entries after a run.
"""

import json
import logging
from collections import defaultdict, deque
from datetime import datetime, timezone
from threading import Lock
from typing import Any, Deque, Dict, List, Optional

logger = logging.getLogger(__name__)

HISTORY_SIZE = 1000


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class MetricsCollector:
    """Thread-safe per-identity counters plus a bounded history of checks"""

    def __init__(self, history_size: int = HISTORY_SIZE):
        self.lock = Lock()
        self.metrics: Dict[str, Dict[str, Any]] = defaultdict(lambda: {
            'count': 0,
            'failures': 0,
            'total_duration': 0.0,
            'max_duration': 0.0,
        })
        self.history: Deque[Dict[str, Any]] = deque(maxlen=history_size)

    def record_check(self, identity: str, passed: bool, duration: float,
                     error: Optional[str] = None, metadata: Optional[Dict[str, Any]] = None):
        """Record one identity check (or one command run)"""
        entry = {
            'timestamp': _now(),
            'identity': identity,
            'passed': passed,
            'duration_ms': round(duration * 1000, 3),
            'error': error,
            'metadata': metadata or {},
        }
        with self.lock:
            data = self.metrics[identity]
            data['count'] += 1
            data['total_duration'] += duration
            data['max_duration'] = max(data['max_duration'], duration)
            if not passed:
                data['failures'] += 1
            self.history.append(entry)

        if not passed:
            logger.warning(json.dumps(entry, default=str))

    def get_metrics(self) -> Dict[str, Any]:
        """Snapshot: per-identity counts, pass rate and timings, plus totals"""
        with self.lock:
            identities = {}
            for identity, data in self.metrics.items():
                count = data['count']
                identities[identity] = {
                    'checks': count,
                    'failures': data['failures'],
                    'pass_rate_pct': round(100 * (count - data['failures']) / count, 2) if count else 0.0,
                    'avg_duration_ms': round(1000 * data['total_duration'] / count, 3) if count else 0.0,
                    'max_duration_ms': round(1000 * data['max_duration'], 3),
                }
            return {
                'identities': identities,
                'total_checks': sum(d['count'] for d in self.metrics.values()),
                'total_failures': sum(d['failures'] for d in self.metrics.values()),
            }

    def get_recent_failures(self, limit: int = 20) -> List[Dict[str, Any]]:
        with self.lock:
            failed = [entry for entry in self.history if not entry['passed']]
        return failed[-limit:]

    def check_alert_conditions(self, slow_threshold: float = 5.0) -> List[Dict[str, Any]]:
        """One alert per failing identity and per identity slower than `slow_threshold` seconds on average"""
        alerts = []
        with self.lock:
            for identity, data in self.metrics.items():
                if data['failures']:
                    alerts.append({
                        'type': 'identity_failure',
                        'identity': identity,
                        'failures': data['failures'],
                        'severity': 'high',
                    })
                average = data['total_duration'] / data['count'] if data['count'] else 0.0
                if average > slow_threshold:
                    alerts.append({
                        'type': 'slow_check',
                        'identity': identity,
                        'avg_duration_sec': round(average, 2),
                        'threshold': slow_threshold,
                        'severity': 'medium',
                    })
        return alerts

    def reset(self):
        with self.lock:
            self.metrics.clear()
            self.history.clear()


class AlertManager:
    """Keeps the alerts raised at the end of each run and logs them"""

    def __init__(self, max_history: int = 100):
        self.history: Deque[Dict[str, Any]] = deque(maxlen=max_history)

    def record_alert(self, alert: Dict[str, Any]):
        entry = {**alert, 'timestamp': _now()}
        self.history.append(entry)
        logger.warning(json.dumps({'type': 'ALERT', 'alert': entry}, default=str))

    def alerts(self, severity: Optional[str] = None) -> List[Dict[str, Any]]:
        return [a for a in self.history if severity is None or a.get('severity') == severity]


# Global instances
metrics_collector = MetricsCollector()
alert_manager = AlertManager()


def log_structured(level: str, message: str, **kwargs):
    """Log one JSON object per line"""
    entry = {'timestamp': _now(), 'level': level.upper(), 'message': message, **kwargs}
    log = getattr(logger, level.lower(), logger.info)
    log(json.dumps(entry, default=str))
