"""
Domain models: dyadic numbers, ball and Siegel points, means, series, periods and reports
"""
