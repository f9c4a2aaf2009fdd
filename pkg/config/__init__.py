# config/__init__.py
# 工作台配置: 種子、語料規模與退出碼，見 settings.py
