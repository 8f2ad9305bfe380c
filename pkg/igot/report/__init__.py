from .bundle import LM_REPORT_FILES, REPORT_FILES, bundle_report, write_json
from .demo import DemoOutput, reduction_pct, render_demo
from .histogram import Histogram, gain_histogram, histogram_comparison, selected_gains, write_histograms_csv
