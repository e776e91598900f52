from cx_Freeze import setup, Executable

# ADD FILES
files = ['config.yaml']

# TARGET
target = Executable(
    script="main.py",
    base=None,
    target_name="igmtf",
)

# SETUP CX FREEZE
setup(
    name = "igmtf",
    version = "1.0.0",
    description = "Instance-wise graph forecasting of multivariate time series",
    options = {'build_exe' : {'include_files' : files, 'packages' : ['numpy', 'yaml', 'pydantic', 'colorlog']}},
    executables = [target]
)
